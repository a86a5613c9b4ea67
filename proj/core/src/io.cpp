#include "latsec/io.hpp"

#include "latsec/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace latsec {

namespace {

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

std::optional<int> parse_dim_suffix(const std::string& spec, const std::string& prefix) {
    if (!spec.starts_with(prefix)) {
        return std::nullopt;
    }
    const std::string tail = spec.substr(prefix.size());
    if (tail.empty()) {
        return std::nullopt;
    }
    int n = 0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
    if (ec != std::errc{} || ptr != tail.data() + tail.size()) {
        return std::nullopt;
    }
    return n;
}

struct ParsedName {
    double scale = 1.0;
    std::string base;
};

ParsedName split_scale(const std::string& spec) {
    ParsedName out;
    const auto star = spec.find('*');
    if (star == std::string::npos) {
        out.base = spec;
        return out;
    }
    out.scale = parse_rational(spec.substr(0, star));
    if (!(out.scale > 0.0)) {
        throw InvalidArgument("scale factor must be positive in \"" + spec + "\"");
    }
    out.base = spec.substr(star + 1);
    return out;
}

}  // namespace

double parse_rational(const std::string& token) {
    const auto slash = token.find('/');
    if (slash != std::string::npos) {
        double num = 0.0;
        double den = 0.0;
        if (!parse_double(token.substr(0, slash), num) ||
            !parse_double(token.substr(slash + 1), den) || den == 0.0) {
            throw InvalidArgument("bad rational entry \"" + token + "\"");
        }
        return num / den;
    }
    double value = 0.0;
    if (!parse_double(token, value)) {
        throw InvalidArgument("bad numeric entry \"" + token + "\"");
    }
    return value;
}

Matrix load_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open generator file \"" + path + "\"");
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream tokens(line);
        std::vector<double> row;
        std::string tok;
        while (tokens >> tok) {
            row.push_back(parse_rational(tok));
        }
        if (row.empty()) {
            continue;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw InvalidArgument("ragged rows in generator file \"" + path + "\"");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InvalidArgument("generator file \"" + path + "\" has no rows");
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.front().size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

Lattice parse_lattice(const std::string& spec) {
    const ParsedName parsed = split_scale(spec);
    const std::string& base = parsed.base;

    Lattice lattice = [&]() -> Lattice {
        if (base == "E8") {
            return gosset_lattice();
        }
        if (base == "E8A") {
            return gosset_construction_a();
        }
        if (base == "Leech") {
            throw InvalidArgument(
                "Leech is available for theta evaluation only (closed form)");
        }
        if (const auto n = parse_dim_suffix(base, "Zn:")) {
            return integer_lattice(*n);
        }
        if (const auto n = parse_dim_suffix(base, "Dn:")) {
            return checkerboard_lattice(*n);
        }
        if (const auto n = parse_dim_suffix(base, "Z")) {
            return integer_lattice(*n);
        }
        if (const auto n = parse_dim_suffix(base, "D")) {
            return checkerboard_lattice(*n);
        }
        if (std::ifstream probe(base); probe.good()) {
            return Lattice(load_generator_file(base), base);
        }
        throw InvalidArgument("unknown lattice \"" + base + "\"");
    }();

    return parsed.scale == 1.0 ? lattice : scaled(lattice, parsed.scale);
}

ThetaSource parse_theta_source(const std::string& spec) {
    const ParsedName parsed = split_scale(spec);
    const std::string& base = parsed.base;

    auto family = [&]() -> std::optional<ThetaFamily> {
        if (base == "E8") {
            return gosset_family();
        }
        if (base == "Leech") {
            return leech_family();
        }
        if (const auto n = parse_dim_suffix(base, "Zn:")) {
            return cubic_family(*n);
        }
        if (const auto n = parse_dim_suffix(base, "Dn:")) {
            return checkerboard_family(*n);
        }
        if (const auto n = parse_dim_suffix(base, "Z")) {
            return cubic_family(*n);
        }
        if (const auto n = parse_dim_suffix(base, "D")) {
            return checkerboard_family(*n);
        }
        return std::nullopt;
    }();

    if (family) {
        family->scale = parsed.scale;
        return ThetaSource(*family);
    }
    return ThetaSource(parse_lattice(spec));
}

std::string format_significant(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    return buf;
}

void write_secrecy_csv(std::ostream& out, const std::vector<SecrecySweepRow>& rows) {
    out << "y,theta_lattice,theta_Zn,xi\n";
    for (const auto& row : rows) {
        out << format_significant(row.y) << ',' << format_significant(row.theta_lattice)
            << ',' << format_significant(row.theta_zn) << ','
            << format_significant(row.xi) << '\n';
    }
}

void write_sigma_sweep_csv(std::ostream& out, const std::vector<SigmaSweepRow>& rows) {
    out << "sigma_e,p_mc,stderr,p_approx\n";
    for (const auto& row : rows) {
        out << format_significant(row.sigma_e) << ',' << format_significant(row.p_mc)
            << ',' << format_significant(row.stderr_mc) << ','
            << format_significant(row.p_approx) << '\n';
    }
}

nlohmann::json sim_report_to_json(const SimReport& report) {
    nlohmann::json j;
    j["trials"] = report.trials;
    j["p_correct_bob"] = report.p_correct_bob;
    j["p_correct_eve"] = report.p_correct_eve;
    j["stderr_bob"] = report.stderr_bob;
    j["stderr_eve"] = report.stderr_eve;
    j["approx_pcb"] = report.approx_pcb;
    j["approx_pce"] = report.approx_pce.raw;
    j["approx_pce_clamped"] = report.approx_pce.clamped;
    j["approx_pce_valid"] = report.approx_pce.valid;
    if (report.ratio_analytic) {
        j["ratio_analytic"] = *report.ratio_analytic;
    } else {
        j["ratio_analytic"] = nullptr;
    }
    if (report.ratio_empirical) {
        j["ratio_empirical"] = *report.ratio_empirical;
    } else {
        j["ratio_empirical"] = nullptr;
    }
    j["seed"] = report.seed;
    j["config"] = {
        {"lattice_b", report.lattice_b}, {"lattice_e", report.lattice_e},
        {"sigma_b", report.sigma_b},     {"sigma_e", report.sigma_e},
        {"window", report.window},       {"trials", report.trials},
        {"seed", report.seed},
    };
    return j;
}

nlohmann::json codebook_to_json(const QuotientCode& quotient) {
    nlohmann::json entries = nlohmann::json::array();
    const int k = quotient.rate_bits();
    for (std::int64_t idx = 0; idx < quotient.index(); ++idx) {
        std::string bits(static_cast<std::size_t>(k), '0');
        for (int b = 0; b < k; ++b) {
            if (idx & (std::int64_t{1} << b)) {
                bits[static_cast<std::size_t>(b)] = '1';
            }
        }
        const Vector rep =
            quotient.has_label_table()
                ? quotient.encode(bits, Vector::Zero(quotient.lattice_b().ambient_dim()))
                : quotient.min_energy_representative(quotient.label_from_bits(bits));
        nlohmann::json coords = nlohmann::json::array();
        for (Eigen::Index i = 0; i < rep.size(); ++i) {
            coords.push_back(rep[i]);
        }
        entries.push_back({{"label_bits", bits}, {"representative_coordinates", coords}});
    }
    return entries;
}

}  // namespace latsec
