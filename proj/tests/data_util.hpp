#ifndef FTX_TESTS_DATA_UTIL_HPP
#define FTX_TESTS_DATA_UTIL_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftx/lattice.hpp"

namespace testdata {

using Row = std::map<std::string, std::string>;

inline std::vector<Row> read_csv(const std::string& name)
{
    std::ifstream in(std::string(FTX_DATA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing data file " + name);
    std::vector<Row> out;
    std::vector<std::string> header;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (header.empty()) {
            header = cells;
            continue;
        }
        Row r;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); i++) r[header[i]] = cells[i];
        out.push_back(std::move(r));
    }
    return out;
}

inline double num(const Row& r, const std::string& k) { return std::stod(r.at(k)); }

inline ftx::TermTable model_table(const std::string& model, int size)
{
    if (model == "heisenberg") return ftx::enumerate_terms(ftx::square(size, ftx::HeisenbergJ1J2{1.0, 0.5, 0.5}));
    if (model == "fermi_hubbard") return ftx::enumerate_terms(ftx::square(size, ftx::FermiHubbard{1.0, 4.0}));
    return ftx::enumerate_terms(ftx::chain(size, ftx::HeisenbergChain{1.0, 1.0}));
}

}  // namespace testdata

#endif  // FTX_TESTS_DATA_UTIL_HPP
