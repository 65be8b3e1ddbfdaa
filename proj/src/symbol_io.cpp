#include "matprobe/symbol_io.hpp"

#include <stdexcept>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "matprobe/errors.hpp"

namespace matprobe {
namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int header_value(const std::string& line, const std::string& key) {
    const auto pos = line.find(key + "=");
    if (pos == std::string::npos) throw ValidationError("symbol file header lacks " + key);
    return std::stoi(line.substr(pos + key.size() + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

void write_symbol_csv(std::ostream& out, const DiscreteSymbol& a) {
    const Grid& g = a.grid();
    out << "# matprobe symbol dim=" << g.dim() << " band=" << g.band() << "\n";
    out << "x_index,xi_index,real,imag\n";
    const std::size_t n = g.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t xi = 0; xi < n; ++xi) {
            const Complex v = a(x, xi);
            out << x << ',' << xi << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
}

DiscreteSymbol read_symbol_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("#", 0) != 0) throw ValidationError("symbol file: missing header");
    const Grid grid(header_value(line, "dim"), header_value(line, "band"));
    const std::size_t n = grid.size();
    std::vector<Complex> values(n * n);
    std::vector<bool> seen(n * n, false);
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("x_index", 0) == 0) continue;
        const auto fields = split(line);
        if (fields.size() != 4) throw ValidationError("symbol file: expected 4 fields in '" + line + "'");
        std::size_t x = 0, xi = 0;
        try {
            x = std::stoul(fields[0]);
            xi = std::stoul(fields[1]);
            if (x >= n || xi >= n) throw std::out_of_range("index");
            values[x * n + xi] = {std::stod(fields[2]), std::stod(fields[3])};
        } catch (const std::logic_error&) {
            throw ValidationError("symbol file: bad row '" + line + "'");
        }
        if (!seen[x * n + xi]) {
            seen[x * n + xi] = true;
            ++count;
        }
    }
    if (count != n * n) throw ValidationError("symbol file: table incomplete");
    return DiscreteSymbol(grid, std::move(values));
}

void save_symbol(const std::string& path, const DiscreteSymbol& a) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    write_symbol_csv(out, a);
}

DiscreteSymbol load_symbol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return read_symbol_csv(in);
}

}  // namespace matprobe
