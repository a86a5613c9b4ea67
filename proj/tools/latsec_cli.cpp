// latsec: lattice coset coding over the Gaussian wiretap channel.
//
// Subcommands expose the library as reproducible batch operations: theta
// evaluation, secrecy-function sweeps and maximization, quotient inspection,
// coset encode/decode, Monte Carlo simulation, and the E8 Construction-A
// demo. All randomness derives from --seed; identical invocations produce
// byte-identical outputs.

#include <latsec/channel.hpp>
#include <latsec/errors.hpp>
#include <latsec/io.hpp>
#include <latsec/quotient.hpp>
#include <latsec/reed_muller.hpp>
#include <latsec/rng.hpp>
#include <latsec/theta.hpp>

#include <nlohmann/json.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace latsec;

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& payload) const {
        if (path.empty()) {
            std::cout << payload;
            if (!payload.empty() && payload.back() != '\n') {
                std::cout << '\n';
            }
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw InvalidArgument("cannot open output file \"" + path + "\"");
        }
        out << payload;
    }
};

void check_format(const std::string& format) {
    if (format != "json" && format != "csv") {
        throw InvalidArgument("--format must be json or csv");
    }
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) {
        throw InvalidArgument("grid requires 0 < min < max");
    }
    if (points < 2) {
        throw InvalidArgument("grid needs at least 2 points");
    }
    std::vector<double> ys(static_cast<std::size_t>(points));
    const double t_lo = std::log(lo);
    const double t_hi = std::log(hi);
    for (int i = 0; i < points; ++i) {
        ys[static_cast<std::size_t>(i)] =
            std::exp(t_lo + (t_hi - t_lo) * i / (points - 1));
    }
    return ys;
}

Vector parse_vector(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        values.push_back(parse_rational(token));
    }
    if (values.empty()) {
        throw InvalidArgument("empty vector \"" + csv + "\"");
    }
    Vector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = values[i];
    }
    return v;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v[i]);
    }
    return arr;
}

QuotientCode build_quotient_cli(const std::string& lattice_b, const std::string& lattice_e,
                                const std::string& labeling) {
    QuotientCode q = QuotientCode::build(parse_lattice(lattice_b), parse_lattice(lattice_e));
    if (labeling == "snf") {
        return q;
    }
    if (labeling == "z2-residues") {
        return q.with_label_table(z2_residue_codebook());
    }
    if (labeling == "e8-demo") {
        return q.with_label_table(e8_example_codebook());
    }
    throw InvalidArgument("--labeling must be snf, z2-residues or e8-demo");
}

// ---------------------------------------------------------------- commands

struct ThetaCmd {
    std::string lattice;
    double y = 1.0;
    bool y_set = false;
    double sigma_e = 0.0;
    bool sigma_set = false;
    double tol = 1e-10;
    std::string format = "json";
    OutputTarget out;

    int run() const {
        check_format(format);
        if (y_set && sigma_set) {
            throw InvalidArgument("--y and --sigma-e are mutually exclusive");
        }
        const ThetaArg arg =
            sigma_set ? ThetaArg::from_sigma(sigma_e) : ThetaArg::from_y(y);
        const ThetaSource source = parse_theta_source(lattice);
        const double theta = source.theta(arg, tol);
        if (format == "csv") {
            std::ostringstream csv;
            csv << "y,theta\n"
                << format_significant(arg.y) << ',' << format_significant(theta) << '\n';
            out.write(csv.str());
        } else {
            json j;
            j["lattice"] = source.label();
            j["y"] = arg.y;
            j["q"] = arg.q;
            j["theta"] = theta;
            j["closed_form"] = source.is_closed_form();
            out.write(j.dump(2));
        }
        return 0;
    }
};

struct SecrecyFunctionCmd {
    std::string lattice;
    double y = 1.0;
    bool y_set = false;
    double y_min = 1.0 / 8;
    double y_max = 8.0;
    int points = 97;
    double tol = 1e-10;
    std::string format;  // empty = json for a point, csv for a sweep
    OutputTarget out;

    int run() const {
        if (!format.empty()) {
            check_format(format);
        }
        const ThetaSource source = parse_theta_source(lattice);
        if (y_set) {
            const ThetaArg arg = ThetaArg::from_y(y);
            const double xi = secrecy_function(source, arg, tol);
            if (format == "csv") {
                std::ostringstream csv;
                csv << "y,xi\n"
                    << format_significant(y) << ',' << format_significant(xi) << '\n';
                out.write(csv.str());
                return 0;
            }  // json otherwise
            json j;
            j["lattice"] = source.label();
            j["y"] = y;
            j["xi"] = xi;
            out.write(j.dump(2));
            return 0;
        }
        if (format == "json") {
            throw InvalidArgument("sweeps are CSV; drop --format json or pass --y");
        }
        std::vector<SecrecySweepRow> rows;
        rows.reserve(static_cast<std::size_t>(points));
        for (double yy : log_grid(y_min, y_max, points)) {
            const ThetaArg arg = ThetaArg::from_y(yy);
            SecrecySweepRow row;
            row.y = yy;
            row.theta_lattice = source.theta(arg, tol);
            row.theta_zn = std::pow(jacobi_theta(JacobiTheta::theta3, arg.q, 1e-12),
                                    source.dim());
            row.xi = row.theta_zn / row.theta_lattice;
            rows.push_back(row);
        }
        std::ostringstream csv;
        write_secrecy_csv(csv, rows);
        out.write(csv.str());
        return 0;
    }
};

struct SecrecyGainCmd {
    std::string lattice;
    SecrecySearch search;
    bool trace = false;
    OutputTarget out;

    int run() const {
        const ThetaSource source = parse_theta_source(lattice);
        const SecrecyResult result = secrecy_gain(source, search);
        json j;
        j["lattice"] = source.label();
        j["gain"] = result.gain;
        j["argmax_y"] = result.argmax_y;
        j["boundary_warning"] = result.boundary_warning;
        j["evaluations"] = result.evaluations.size();
        if (trace) {
            json t = json::array();
            for (const auto& [y, xi] : result.evaluations) {
                t.push_back({y, xi});
            }
            j["trace"] = t;
        }
        out.write(j.dump(2));
        return 0;
    }
};

struct QuotientCmd {
    std::string lattice_b;
    std::string lattice_e;
    std::string labeling = "snf";
    std::string codebook_path;
    OutputTarget out;

    int run() const {
        const QuotientCode q = build_quotient_cli(lattice_b, lattice_e, labeling);
        json j;
        j["lattice_b"] = q.lattice_b().name();
        j["lattice_e"] = q.lattice_e().name();
        j["index"] = q.index();
        j["k"] = q.rate_bits();
        j["d"] = q.snf().diag;
        j["rate_bits_per_complex_symbol"] = q.rate_bits_per_complex_symbol();
        if (!codebook_path.empty()) {
            OutputTarget codebook{codebook_path};
            codebook.write(codebook_to_json(q).dump(2));
            j["codebook"] = codebook_path;
        }
        out.write(j.dump(2));
        return 0;
    }
};

struct EncodeCmd {
    std::string lattice_b;
    std::string lattice_e;
    std::string labeling = "snf";
    std::string bits;
    std::uint64_t seed = 1;
    std::int64_t window = 2;
    OutputTarget out;

    int run() const {
        if (window < 1) {
            throw InvalidArgument("--window must be >= 1");
        }
        const QuotientCode q = build_quotient_cli(lattice_b, lattice_e, labeling);
        const int n = q.lattice_b().ambient_dim();
        IntVector z(n);
        for (int i = 0; i < n; ++i) {
            z[i] = rng::uniform_int(rng::word(seed, 0, 2, static_cast<std::uint64_t>(i)),
                                    -window, window);
        }
        const Vector r = q.lattice_e_point(z);
        const Vector x = q.encode(bits, r);
        json j;
        j["bits"] = bits;
        j["window_coords"] = std::vector<std::int64_t>(z.data(), z.data() + z.size());
        j["r"] = vector_to_json(r);
        j["x"] = vector_to_json(x);
        j["seed"] = seed;
        out.write(j.dump(2));
        return 0;
    }
};

struct DecodeCmd {
    std::string lattice_b;
    std::string lattice_e;
    std::string labeling = "snf";
    std::string received;
    OutputTarget out;

    int run() const {
        const QuotientCode q = build_quotient_cli(lattice_b, lattice_e, labeling);
        const Vector y = parse_vector(received);
        const auto [bits, point] = q.decode(y);
        json j;
        j["received"] = vector_to_json(y);
        j["bits"] = bits;
        j["decoded_point"] = vector_to_json(point);
        out.write(j.dump(2));
        return 0;
    }
};

struct SimulateCmd {
    std::string lattice_b;
    std::string lattice_e;
    std::string labeling = "snf";
    double sigma_b = 0.1;
    std::vector<double> sigma_e;
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    std::int64_t window = 2;
    double tol = 1e-10;
    int threads = 0;
    std::string format;
    OutputTarget out;

    int run() const {
        if (sigma_e.empty()) {
            throw InvalidArgument("--sigma-e is required");
        }
        const QuotientCode q = build_quotient_cli(lattice_b, lattice_e, labeling);
        SimOptions opts;
        opts.trials = trials;
        opts.seed = seed;
        opts.window = window;
        opts.theta_tol = tol;
        opts.threads = threads;

        if (sigma_e.size() == 1) {
            const SimReport report =
                simulate(q, ChannelParams{sigma_b, sigma_e.front()}, opts);
            out.write(sim_report_to_json(report).dump(2));
            return 0;
        }
        // several noise levels: the sigma-sweep CSV interface
        std::vector<SigmaSweepRow> rows;
        rows.reserve(sigma_e.size());
        for (double s : sigma_e) {
            const SimReport report = simulate(q, ChannelParams{sigma_b, s}, opts);
            rows.push_back(
                SigmaSweepRow{s, report.p_correct_eve, report.stderr_eve,
                              report.approx_pce.raw});
        }
        std::ostringstream csv;
        write_sigma_sweep_csv(csv, rows);
        out.write(csv.str());
        return 0;
    }
};

struct E8DemoCmd {
    std::string bits;
    std::uint64_t seed = 1;
    std::int64_t window = 2;
    OutputTarget out;

    int run() const {
        if (window < 1) {
            throw InvalidArgument("--window must be >= 1");
        }
        const QuotientCode q =
            QuotientCode::build(gosset_construction_a(),
                                scaled(gosset_construction_a(), 2.0))
                .with_label_table(e8_example_codebook());

        std::string info = bits;
        if (info.empty()) {
            info.resize(8);
            for (int b = 0; b < 8; ++b) {
                info[static_cast<std::size_t>(b)] =
                    (rng::word(seed, 0, 1, static_cast<std::uint64_t>(b)) & 1) ? '1' : '0';
            }
        }
        validate_bits(info, 8);

        std::string random_code(4, '0');
        for (int b = 0; b < 4; ++b) {
            random_code[static_cast<std::size_t>(b)] =
                (rng::word(seed, 0, 6, static_cast<std::uint64_t>(b)) & 1) ? '1' : '0';
        }
        std::vector<std::int64_t> z(8);
        for (int i = 0; i < 8; ++i) {
            z[static_cast<std::size_t>(i)] = rng::uniform_int(
                rng::word(seed, 0, 2, static_cast<std::uint64_t>(i)), -window, window);
        }
        const Vector x = e8_example_encode(info, random_code, z);
        const auto [decoded, point] = q.decode(x);

        const auto& code = BinaryCode::reed_muller_8_4_4();
        json weights;
        for (const CodeWord& w : code.codewords()) {
            const std::string key = std::to_string(hamming_weight(w));
            weights[key] = weights.contains(key) ? weights[key].get<int>() + 1 : 1;
        }

        json j;
        j["lattice_b"] = "E8A";
        j["lattice_e"] = "2*E8A";
        j["index"] = q.index();
        j["k"] = q.rate_bits();
        j["rate_bits_per_complex_symbol"] = q.rate_bits_per_complex_symbol();
        j["codeword_weights"] = weights;
        j["info_bits"] = info;
        j["random_code_bits"] = random_code;
        j["random_z"] = z;
        j["x"] = vector_to_json(x);
        j["decoded_bits"] = decoded;
        j["round_trip_ok"] = decoded == info;
        j["seed"] = seed;
        out.write(j.dump(2));
        return 0;
    }
};

int dispatch(CLI::App& app, int argc, char** argv, const std::vector<std::pair<
                 CLI::App*, std::function<int()>>>& commands) {
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        json err;
        err["error"] = {{"type", "invalid-argument"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return kExitValidation;
    }
    try {
        for (const auto& [cmd, fn] : commands) {
            if (cmd->parsed()) {
                return fn();
            }
        }
        std::cerr << app.help() << '\n';
        return kExitValidation;
    } catch (const InvalidArgument& e) {
        json err;
        err["error"] = {{"type", "invalid-argument"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return kExitValidation;
    } catch (const ResourceLimit& e) {
        json err;
        err["error"] = {{"type", "resource-limit"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"type", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice coset coding and secrecy-gain analysis"};
    app.require_subcommand(0, 1);

    std::vector<std::pair<CLI::App*, std::function<int()>>> commands;

    auto theta_cmd = std::make_shared<ThetaCmd>();
    {
        CLI::App* c = app.add_subcommand("theta", "evaluate a lattice theta series");
        c->add_option("--lattice", theta_cmd->lattice, "lattice name or generator file")
            ->required();
        c->add_option("--y", theta_cmd->y, "evaluation point y > 0")
            ->check(CLI::PositiveNumber)
            ->each([theta_cmd](const std::string&) { theta_cmd->y_set = true; });
        c->add_option("--sigma-e", theta_cmd->sigma_e, "noise level; y = 1/(2 pi sigma^2)")
            ->check(CLI::PositiveNumber)
            ->each([theta_cmd](const std::string&) { theta_cmd->sigma_set = true; });
        c->add_option("--tol", theta_cmd->tol, "series tail tolerance");
        c->add_option("--format", theta_cmd->format, "json|csv");
        c->add_option("--out", theta_cmd->out.path, "output file (default stdout)");
        commands.emplace_back(c, [theta_cmd] { return theta_cmd->run(); });
    }

    auto xi_cmd = std::make_shared<SecrecyFunctionCmd>();
    {
        CLI::App* c = app.add_subcommand(
            "secrecy-function", "secrecy function at a point or swept over a log grid");
        c->add_option("--lattice", xi_cmd->lattice)->required();
        c->add_option("--y", xi_cmd->y, "single evaluation point")
            ->check(CLI::PositiveNumber)
            ->each([xi_cmd](const std::string&) { xi_cmd->y_set = true; });
        c->add_option("--y-min", xi_cmd->y_min, "sweep lower bound")->check(CLI::PositiveNumber);
        c->add_option("--y-max", xi_cmd->y_max, "sweep upper bound")->check(CLI::PositiveNumber);
        c->add_option("--points", xi_cmd->points, "sweep grid size");
        c->add_option("--tol", xi_cmd->tol, "theta tail tolerance");
        c->add_option("--format", xi_cmd->format, "json|csv");
        c->add_option("--out", xi_cmd->out.path);
        commands.emplace_back(c, [xi_cmd] { return xi_cmd->run(); });
    }

    auto gain_cmd = std::make_shared<SecrecyGainCmd>();
    {
        CLI::App* c = app.add_subcommand("secrecy-gain",
                                         "maximize the secrecy function over y");
        c->add_option("--lattice", gain_cmd->lattice)->required();
        c->add_option("--y-min", gain_cmd->search.y_lo)->check(CLI::PositiveNumber);
        c->add_option("--y-max", gain_cmd->search.y_hi)->check(CLI::PositiveNumber);
        c->add_option("--points", gain_cmd->search.grid_points, "coarse grid size");
        c->add_option("--tol", gain_cmd->search.tol, "refinement tolerance in log y");
        c->add_flag("--trace", gain_cmd->trace, "include every evaluation in the output");
        c->add_option("--out", gain_cmd->out.path);
        commands.emplace_back(c, [gain_cmd] { return gain_cmd->run(); });
    }

    auto quotient_cmd = std::make_shared<QuotientCmd>();
    {
        CLI::App* c = app.add_subcommand("quotient",
                                         "Smith-normal-form structure of a lattice pair");
        c->add_option("--lattice-b", quotient_cmd->lattice_b)->required();
        c->add_option("--lattice-e", quotient_cmd->lattice_e)->required();
        c->add_option("--labeling", quotient_cmd->labeling, "snf|z2-residues|e8-demo");
        c->add_option("--codebook", quotient_cmd->codebook_path,
                      "also dump the label/representative table to this file");
        c->add_option("--out", quotient_cmd->out.path);
        commands.emplace_back(c, [quotient_cmd] { return quotient_cmd->run(); });
    }

    auto encode_cmd = std::make_shared<EncodeCmd>();
    {
        CLI::App* c = app.add_subcommand("encode", "map bits to a coset point");
        c->add_option("--lattice-b", encode_cmd->lattice_b)->required();
        c->add_option("--lattice-e", encode_cmd->lattice_e)->required();
        c->add_option("--labeling", encode_cmd->labeling, "snf|z2-residues|e8-demo");
        c->add_option("--bits", encode_cmd->bits, "k information bits")->required();
        c->add_option("--seed", encode_cmd->seed, "randomness seed");
        c->add_option("--window", encode_cmd->window, "window half-width L");
        c->add_option("--out", encode_cmd->out.path);
        commands.emplace_back(c, [encode_cmd] { return encode_cmd->run(); });
    }

    auto decode_cmd = std::make_shared<DecodeCmd>();
    {
        CLI::App* c = app.add_subcommand("decode", "recover bits from a received vector");
        c->add_option("--lattice-b", decode_cmd->lattice_b)->required();
        c->add_option("--lattice-e", decode_cmd->lattice_e)->required();
        c->add_option("--labeling", decode_cmd->labeling, "snf|z2-residues|e8-demo");
        c->add_option("--received", decode_cmd->received,
                      "comma-separated received vector")
            ->required();
        c->add_option("--out", decode_cmd->out.path);
        commands.emplace_back(c, [decode_cmd] { return decode_cmd->run(); });
    }

    auto sim_cmd = std::make_shared<SimulateCmd>();
    {
        CLI::App* c = app.add_subcommand(
            "simulate", "Monte Carlo correct-decision probabilities for Bob and Eve");
        c->add_option("--lattice-b", sim_cmd->lattice_b)->required();
        c->add_option("--lattice-e", sim_cmd->lattice_e)->required();
        c->add_option("--labeling", sim_cmd->labeling, "snf|z2-residues|e8-demo");
        c->add_option("--sigma-b", sim_cmd->sigma_b, "Bob noise std dev")
            ->check(CLI::NonNegativeNumber);
        c->add_option("--sigma-e", sim_cmd->sigma_e,
                      "Eve noise std dev; repeat for a sweep (CSV output)")
            ->required();
        c->add_option("--trials", sim_cmd->trials)->check(CLI::PositiveNumber);
        c->add_option("--seed", sim_cmd->seed);
        c->add_option("--window", sim_cmd->window, "window half-width L");
        c->add_option("--tol", sim_cmd->tol, "theta tail tolerance");
        c->add_option("--threads", sim_cmd->threads, "0 = all hardware threads");
        c->add_option("--format", sim_cmd->format, "ignored; kept for symmetry");
        c->add_option("--out", sim_cmd->out.path);
        commands.emplace_back(c, [sim_cmd] { return sim_cmd->run(); });
    }

    auto demo_cmd = std::make_shared<E8DemoCmd>();
    {
        CLI::App* c = app.add_subcommand(
            "e8-demo", "Construction-A E8/2E8 coset code walkthrough");
        c->add_option("--bits", demo_cmd->bits, "8 info bits (default: drawn from seed)");
        c->add_option("--seed", demo_cmd->seed);
        c->add_option("--window", demo_cmd->window);
        c->add_option("--out", demo_cmd->out.path);
        commands.emplace_back(c, [demo_cmd] { return demo_cmd->run(); });
    }

    return dispatch(app, argc, argv, commands);
}
