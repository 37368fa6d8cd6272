#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace tangle::sweeps {

struct SweepConfig {
    int grid = 40;
    std::uint64_t seed = 1;
    std::string format = "csv";  // csv | json
    int threads = 0;             // 0 = hardware concurrency
};

using Cell = std::variant<double, std::string>;

struct Table {
    std::string name;
    std::string comment;  // version, seed and flags record
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Symmetric-state cloud plus the two boundary-curve families.
Table fig1(const SweepConfig& cfg);
// Average decay rates tau/q_c along both initial-state families.
Table fig2(const SweepConfig& cfg);
// Critical rescaled-noise curves over the noise-sector weight p.
Table fig3(const SweepConfig& cfg);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);
void write_table(const Table& t, const std::string& format, std::ostream& os);

// Worker pool over [0, n); results must be stored by index so output order
// never depends on completion order.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace tangle::sweeps
