#pragma once

#include <string>
#include <vector>

#include "polariton/fano.hpp"
#include "polariton/master.hpp"
#include "polariton/spectrum.hpp"

namespace polariton {

// Numeric table with a header row; every cell is written with 12 significant digits.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Throw IoFailure when the file cannot be opened, written or parsed.
void write_table(const std::string& path, const Table& t);
Table read_table(const std::string& path);

// t,nL,nU,na,nb
Table trajectory_table(const Trajectory& tr);
// omega,re_nn,im_nn,re_anom,im_anom
Table spectrum_table(const SpectralResult& s);
// omega,re_u,im_u,weight
Table weight_table(const FanoCoefficients& f);
// na,nb,nL,nU (one row)
Table occupation_table(double na, double nb, double nl, double nu);

} // namespace polariton
