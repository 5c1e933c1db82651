#include "polariton/csv.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace polariton {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

} // namespace

void write_table(const std::string& path, const Table& t)
{
    std::ofstream f(path);
    if (!f) throw IoFailure("cannot open " + path + " for writing");
    for (size_t i = 0; i < t.header.size(); ++i) f << (i ? "," : "") << t.header[i];
    f << '\n' << std::setprecision(12);
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
        f << '\n';
    }
    if (!f) throw IoFailure("write to " + path + " failed");
}

Table read_table(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw IoFailure("cannot open " + path);
    Table t;
    std::string line;
    if (!std::getline(f, line)) throw IoFailure(path + " is empty");
    t.header = split(line);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& cell : split(line)) {
            try {
                size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw IoFailure(path + ": non-numeric cell '" + cell + "'");
            }
        }
        if (row.size() != t.header.size()) throw IoFailure(path + ": row width differs from header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table trajectory_table(const Trajectory& tr)
{
    Table t{{"t", "nL", "nU", "na", "nb"}, {}};
    for (size_t i = 0; i < tr.t.size(); ++i) {
        const Observables& o = tr.obs[i];
        t.rows.push_back({tr.t[i], o.n_lower, o.n_upper, o.n_photon, o.n_excitation});
    }
    return t;
}

Table spectrum_table(const SpectralResult& s)
{
    Table t{{"omega", "re_nn", "im_nn", "re_anom", "im_anom"}, {}};
    for (size_t i = 0; i < s.omega.size(); ++i)
        t.rows.push_back({s.omega[i], s.normal[i].real(), s.normal[i].imag(), s.anomalous[i].real(),
                          s.anomalous[i].imag()});
    return t;
}

Table weight_table(const FanoCoefficients& f)
{
    Table t{{"omega", "re_u", "im_u", "weight"}, {}};
    for (size_t i = 0; i < f.omega.size(); ++i) t.rows.push_back({f.omega[i], f.u[i].real(), f.u[i].imag(), f.weight[i]});
    return t;
}

Table occupation_table(double na, double nb, double nl, double nu)
{
    return {{"na", "nb", "nL", "nU"}, {{na, nb, nl, nu}}};
}

} // namespace polariton
