#include "dynwave/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include <fmt/format.h>

namespace dynwave {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CsvError(fmt::format("cannot write '{}'", path.string()));
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CsvError(fmt::format("cannot read '{}'", path.string()));
    }
    return in;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_field(std::string_view s, const std::filesystem::path& path, std::size_t row) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw CsvError(fmt::format("{}: row {}: cannot parse '{}'", path.string(), row, s));
    }
    return v;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_snapshots(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "n,t,k,x,u\n");
    const Grid& g = traj.grid;
    for (const auto& s : traj.snapshots) {
        for (int k = 0; k <= g.K(); ++k) {
            fmt::format_to(std::back_inserter(buf), "{},{:.17g},{},{:.17g},{:.17g}\n", s.n,
                           g.t(s.n), k, g.x(k), s.u[k]);
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_energy(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "n,t,J,delta,drift\n");
    for (std::size_t i = 0; i < traj.energy.size(); ++i) {
        const auto& e = traj.energy[i];
        fmt::format_to(std::back_inserter(buf), "{},{:.17g},{:.17g},{:.17g},{:.17g}\n", e.n, e.t,
                       e.J, e.delta, traj.drift_at(i));
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_diagnostics(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "n,iterations,final_increment,M_n,radius_ok\n");
    for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
        const auto& d = traj.diagnostics[i];
        const char* ok = !d.radius_ok ? "na" : (*d.radius_ok ? "1" : "0");
        fmt::format_to(std::back_inserter(buf), "{},{},{:.17g},{:.17g},{}\n", i + 1, d.iterations,
                       d.final_increment, d.m_n, ok);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_convergence(const std::filesystem::path& path, std::span<const ConvergenceRow> rows) {
    auto out = open_out(path);
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf),
                   "level,K,N,dx,dt,err_l2,err_h1,err_composite,observed_order\n");
    for (const auto& r : rows) {
        fmt::format_to(std::back_inserter(buf),
                       "{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.level, r.K,
                       r.N, r.dx, r.dt, r.err_l2, r.err_h1, r.err_composite, r.observed_order);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<SnapshotRow> read_snapshots(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "n,t,k,x,u") {
        throw CsvError(fmt::format("{}: expected header 'n,t,k,x,u'", path.string()));
    }
    std::vector<SnapshotRow> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 5) {
            throw CsvError(fmt::format("{}: row {}: expected 5 fields", path.string(), row));
        }
        rows.push_back({parse_field<int>(f[0], path, row), parse_field<double>(f[1], path, row),
                        parse_field<int>(f[2], path, row), parse_field<double>(f[3], path, row),
                        parse_field<double>(f[4], path, row)});
    }
    return rows;
}

InitialData read_initial_csv(const std::filesystem::path& path, const Grid& grid) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "x,u0,v0") {
        throw CsvError(fmt::format("{}: expected header 'x,u0,v0'", path.string()));
    }
    InitialData data;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 3) {
            throw CsvError(fmt::format("{}: row {}: expected 3 fields", path.string(), row));
        }
        const double x = parse_field<double>(f[0], path, row);
        const int k = static_cast<int>(data.u0.size());
        if (k > grid.K()) {
            throw CsvError(fmt::format("{}: more than K+1 = {} data rows", path.string(),
                                       grid.nodes()));
        }
        if (std::abs(x - grid.x(k)) > 1e-12 * std::max(1.0, grid.L())) {
            throw CsvError(fmt::format("{}: row {}: x = {} does not match grid node x_{} = {}",
                                       path.string(), row, x, k, grid.x(k)));
        }
        data.u0.push_back(parse_field<double>(f[1], path, row));
        data.v0.push_back(parse_field<double>(f[2], path, row));
    }
    if (data.u0.size() != grid.nodes()) {
        throw CsvError(fmt::format("{}: expected K+1 = {} data rows, found {}", path.string(),
                                   grid.nodes(), data.u0.size()));
    }
    return data;
}

}  // namespace dynwave
