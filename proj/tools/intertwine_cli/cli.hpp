#pragma once

// Command logic of intertwine-cli. Kept header-only so the tests can drive
// run() with in-memory streams.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <locale>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "intertwine/closedform.hpp"
#include "intertwine/report_json.hpp"
#include "intertwine/spectrum.hpp"
#include "intertwine/verify.hpp"

namespace intertwine::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_config = 2;

/// Raised for any invalid flag combination; maps to exit status 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Locale-independent rendering with 17 significant digits.
inline std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Three significant digits, for human-readable summaries.
inline std::string format_short(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 3);
    return std::string(buf, res.ptr);
}

/// Applies the optional output-directory override to relative paths.
inline std::filesystem::path resolve_output(const std::string& path)
{
    std::filesystem::path out(path);
    if (out.is_relative())
        if (const char* dir = std::getenv("INTERTWINE_OUTPUT_DIR"); dir && *dir) out = std::filesystem::path(dir) / out;
    return out;
}

inline void write_output(const std::string& path, const std::string& content, std::ostream& out)
{
    if (path.empty()) {
        out << content;
        return;
    }
    const auto target = resolve_output(path);
    std::ofstream file(target, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output path '" + target.string() + "'");
    file << content;
    if (!file.flush()) throw ConfigError("failed writing output path '" + target.string() + "'");
}

// ---------------------------------------------------------------- spectrum

struct SpectrumConfig {
    int p = 1;
    int q = 1;
    double r = 0.0;
    int jmax = 8;
    int kmax = 8;
    std::string parity = "both";
    std::string method = "all";
    std::string format = "csv";
    std::string output;
};

struct SpectrumCell {
    EntryState state = EntryState::finite;
    double value = 0.0;
};

struct SpectrumRow {
    KType v;
    HalfInt J, K;
    int parity = 0;
    std::optional<SpectrumCell> recursion;
    std::optional<SpectrumCell> closed_form;
    std::optional<double> factorized;
    std::optional<double> disagreement;
};

inline void validate(const SpectrumConfig& c)
{
    Signature(c.p, c.q);
    if (c.jmax < 1 || c.kmax < 1) throw InvalidArgument("spectrum requires jmax >= 1 and kmax >= 1");
    if (c.parity != "0" && c.parity != "1" && c.parity != "both")
        throw ConfigError("parity must be 0, 1 or both, got '" + c.parity + "'");
    if (c.method != "all" && c.method != "recursion" && c.method != "closed-form" && c.method != "factorized")
        throw ConfigError("method must be all, recursion, closed-form or factorized, got '" + c.method + "'");
    if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json, got '" + c.format + "'");
}

/// One row per K-type of the box, ordered by (j, k). Recursion skips
/// singular edges; unreachable entries keep their zero-denominator marker.
inline std::vector<SpectrumRow> spectrum_rows(const SpectrumConfig& c)
{
    validate(c);
    const Signature sig(c.p, c.q);
    const SpectralOrder r(c.r);
    const bool want_rec = c.method == "all" || c.method == "recursion";
    const bool want_cf = c.method == "all" || c.method == "closed-form";
    const bool want_fac = (c.method == "all" || c.method == "factorized") && r.is_integer();

    std::map<KType, SpectrumRow> rows;
    for (int parity : {0, 1}) {
        if (c.parity != "both" && c.parity != std::to_string(parity)) continue;
        std::optional<SpectrumTable> rec, cf;
        if (want_rec) rec = recursion_spectrum(sig, r, c.jmax, c.kmax, parity, {.policy = SingularEdgePolicy::skip});
        if (want_cf) cf = closed_form_spectrum(sig, r, c.jmax, c.kmax, parity);
        for (int j = 0; j <= c.jmax; ++j)
            for (int k = 0; k <= c.kmax; ++k) {
                const KType v{j, k};
                if (v.parity() != parity) continue;
                SpectrumRow row{v, v.J(sig), v.K(sig), parity, {}, {}, {}, {}};
                if (rec) {
                    const auto& e = rec->entries.at(v);
                    row.recursion = SpectrumCell{e.state, e.value};
                }
                if (cf) {
                    const auto& e = cf->entries.at(v);
                    row.closed_form = SpectrumCell{e.state, e.value};
                }
                if (want_fac) row.factorized = factorized_eigenvalue(sig, r.as_integer(), v);
                if (row.recursion && row.closed_form && row.recursion->state == EntryState::finite &&
                    row.closed_form->state == EntryState::finite)
                    row.disagreement = detail::relative_difference(row.recursion->value, row.closed_form->value);
                rows.emplace(v, row);
            }
    }
    std::vector<SpectrumRow> out;
    out.reserve(rows.size());
    for (auto& [v, row] : rows) out.push_back(row);
    return out;
}

inline std::string render_cell(const std::optional<SpectrumCell>& cell)
{
    if (!cell) return "";
    switch (cell->state) {
    case EntryState::pole: return "pole";
    case EntryState::zero_denominator: return "zero-denominator";
    case EntryState::finite: break;
    }
    return format_double(cell->value);
}

inline nlohmann::ordered_json cell_json(const std::optional<SpectrumCell>& cell)
{
    if (!cell) return nullptr;
    if (cell->state != EntryState::finite) return render_cell(cell);
    return cell->value;
}

inline const char* spectrum_columns[] = {"j",      "k",           "J", "K", "parity", "mu_recursion", "mu_closed_form",
                                         "mu_factorized_or_blank", "max_rel_disagreement"};

inline std::string render_csv(const std::vector<SpectrumRow>& rows)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    bool first = true;
    for (const char* col : spectrum_columns) {
        os << (first ? "" : ",") << col;
        first = false;
    }
    os << '\n';
    for (const auto& row : rows) {
        os << row.v.j << ',' << row.v.k << ',' << format_double(row.J.value()) << ',' << format_double(row.K.value())
           << ',' << row.parity << ',' << render_cell(row.recursion) << ',' << render_cell(row.closed_form) << ','
           << (row.factorized ? format_double(*row.factorized) : "") << ','
           << (row.disagreement ? format_double(*row.disagreement) : "n/a") << '\n';
    }
    return os.str();
}

inline std::string render_json(const SpectrumConfig& c, const std::vector<SpectrumRow>& rows)
{
    nlohmann::ordered_json j;
    j["schema_version"] = json_schema_version;
    j["command"] = "spectrum";
    j["p"] = c.p;
    j["q"] = c.q;
    j["r"] = c.r;
    j["jmax"] = c.jmax;
    j["kmax"] = c.kmax;
    j["parity"] = c.parity;
    j["method"] = c.method;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json e;
        e["j"] = row.v.j;
        e["k"] = row.v.k;
        e["J"] = row.J.value();
        e["K"] = row.K.value();
        e["parity"] = row.parity;
        e["mu_recursion"] = cell_json(row.recursion);
        e["mu_closed_form"] = cell_json(row.closed_form);
        e["mu_factorized_or_blank"] = row.factorized ? nlohmann::ordered_json(*row.factorized) : nullptr;
        e["max_rel_disagreement"] = row.disagreement ? nlohmann::ordered_json(*row.disagreement) : "n/a";
        arr.push_back(std::move(e));
    }
    j["rows"] = std::move(arr);
    return j.dump(2) + "\n";
}

inline int cmd_spectrum(const SpectrumConfig& c, std::ostream& out)
{
    const auto rows = spectrum_rows(c);
    write_output(c.output, c.format == "csv" ? render_csv(rows) : render_json(c, rows), out);
    return exit_pass;
}

// ------------------------------------------------------------------ verify

inline const std::vector<std::string> all_checks = {"lemma1",     "intertwining",     "method-agreement",
                                                    "conformal-laplacian", "inversion", "loop-consistency"};

inline const std::map<std::string, double> default_tolerances = {
    {"lemma1", 1e-8},    {"intertwining", 1e-9}, {"method-agreement", 1e-10}, {"conformal-laplacian", 0.0},
    {"inversion", 1e-12}, {"loop-consistency", 1e-12}};

inline const std::vector<double> default_orders = {0.37, 1.5, -0.8, 2.25};

struct VerifyConfig {
    std::optional<int> p;
    std::optional<int> q;
    std::optional<double> r;
    int jmax = 8;
    int kmax = 8;
    std::vector<std::string> checks;
    bool all = false;
    std::uint64_t seed = 20240917;
    int functions = 4;
    int loop_length = 8;
    std::vector<std::string> tolerance_overrides;
    std::string output;
};

struct VerifyPlan {
    std::vector<Signature> signatures;
    std::vector<double> orders;
    std::vector<std::string> checks;
    std::map<std::string, double> tolerances;
};

inline VerifyPlan plan(const VerifyConfig& c)
{
    VerifyPlan plan;
    if (c.p.has_value() != c.q.has_value()) throw ConfigError("give both --p and --q, or neither for the default sweep");
    if (c.p) {
        plan.signatures.emplace_back(*c.p, *c.q);
    } else {
        for (int p = 1; p <= 3; ++p)
            for (int q = 1; q <= 3; ++q) plan.signatures.emplace_back(p, q);
    }
    plan.orders = c.r ? std::vector<double>{*c.r} : default_orders;
    for (double r : plan.orders) SpectralOrder{r};
    if (c.jmax < 1 || c.kmax < 1) throw InvalidArgument("verify requires jmax >= 1 and kmax >= 1");
    if (c.functions < 1) throw InvalidArgument("verify requires functions >= 1");
    if (c.loop_length < 2) throw InvalidArgument("verify requires loop-length >= 2");

    if (c.all && !c.checks.empty()) throw ConfigError("--all and --check are mutually exclusive");
    if (!c.all && c.checks.empty()) throw ConfigError("select checks with --check or --all");
    plan.checks = c.all ? all_checks : c.checks;
    for (const auto& name : plan.checks)
        if (!default_tolerances.contains(name)) throw ConfigError("unknown check '" + name + "'");

    plan.tolerances = default_tolerances;
    for (const auto& item : c.tolerance_overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("tolerance override must read check=value, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        if (!default_tolerances.contains(name)) throw ConfigError("unknown check '" + name + "' in tolerance override");
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !(value >= 0.0))
            throw ConfigError("tolerance for '" + name + "' must be a nonnegative number, got '" + text + "'");
        plan.tolerances[name] = value;
    }
    return plan;
}

namespace detail {

// Worst of several runs of one check over a function family.
inline VerificationReport merge_family(std::vector<VerificationReport> runs, std::uint64_t seed)
{
    VerificationReport out = runs.front();
    out.evaluated = out.skipped = 0;
    out.max_residual = 0.0;
    out.worst_location.clear();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        out.evaluated += runs[i].evaluated;
        out.skipped += runs[i].skipped;
        if (i == 0 || !(runs[i].max_residual <= out.max_residual)) {
            out.max_residual = runs[i].max_residual;
            out.worst_location = "f" + std::to_string(i) + " " + runs[i].worst_location;
        }
    }
    out.seed = seed;
    out.note = std::to_string(runs.size()) + " functions, seeds " + std::to_string(seed) + ".." +
               std::to_string(seed + runs.size() - 1);
    out.pass = out.max_residual <= out.tolerance;
    return out;
}

inline VerificationReport failed_report(const std::string& check, const Signature& sig, std::optional<double> r,
                                        const VerifyConfig& c, double tol, const std::string& why)
{
    VerificationReport rep;
    rep.check = check;
    rep.p = sig.p();
    rep.q = sig.q();
    rep.r = r;
    rep.jmax = c.jmax;
    rep.kmax = c.kmax;
    rep.max_residual = std::numeric_limits<double>::infinity();
    rep.tolerance = tol;
    rep.pass = false;
    rep.note = "not evaluated: " + why;
    return rep;
}

}  // namespace detail

inline VerificationReport run_check(const std::string& check, const Signature& sig, std::optional<double> rv,
                                    const VerifyConfig& c, double tol)
{
    try {
        if (check == "lemma1") {
            const auto grid = make_grid(sig, c.jmax + 1, c.kmax + 1);
            std::vector<VerificationReport> runs;
            for (int i = 0; i < c.functions; ++i)
                runs.push_back(check_lemma1(sig, ZonalFunction::random(sig, c.jmax, c.kmax, c.seed + i), grid, tol));
            return detail::merge_family(std::move(runs), c.seed);
        }
        if (check == "conformal-laplacian") {
            auto rep = check_conformal_laplacian(sig, c.jmax, c.kmax);
            rep.tolerance = tol;
            return intertwine::detail::finish(rep);
        }
        const SpectralOrder r(*rv);
        if (check == "intertwining") {
            std::vector<VerificationReport> runs;
            for (int i = 0; i < c.functions; ++i)
                runs.push_back(check_intertwining(sig, r, ZonalFunction::random(sig, c.jmax, c.kmax, c.seed + i), tol));
            return detail::merge_family(std::move(runs), c.seed);
        }
        if (check == "method-agreement") return check_method_agreement(sig, r, c.jmax, c.kmax, tol);
        if (check == "inversion") return check_inversion(sig, r, c.jmax, c.kmax, tol);
        if (check == "loop-consistency") return check_loop_consistency(sig, r, c.jmax, c.kmax, c.loop_length, tol);
    } catch (const Error& e) {
        return detail::failed_report(check, sig, rv, c, tol, e.what());
    }
    throw ConfigError("unknown check '" + check + "'");
}

inline bool is_order_independent(const std::string& check) { return check == "lemma1" || check == "conformal-laplacian"; }

inline std::string summary_line(const VerificationReport& rep)
{
    std::string line = rep.pass ? "PASS " : "FAIL ";
    line += rep.check + " p=" + std::to_string(rep.p) + " q=" + std::to_string(rep.q);
    if (rep.r) line += " r=" + format_short(*rep.r);
    line += " max_residual=" + format_short(rep.max_residual) + " tol=" + format_short(rep.tolerance);
    if (!rep.worst_location.empty()) line += " at " + rep.worst_location;
    if (!rep.pass && !rep.note.empty()) line += " (" + rep.note + ")";
    return line;
}

inline std::vector<VerificationReport> run_verify(const VerifyPlan& plan, const VerifyConfig& c)
{
    std::vector<VerificationReport> reports;
    for (const auto& sig : plan.signatures)
        for (const auto& check : plan.checks) {
            const double tol = plan.tolerances.at(check);
            if (is_order_independent(check)) {
                reports.push_back(run_check(check, sig, std::nullopt, c, tol));
                continue;
            }
            for (double r : plan.orders) reports.push_back(run_check(check, sig, r, c, tol));
        }
    return reports;
}

inline int cmd_verify(const VerifyConfig& c, std::ostream& out)
{
    const auto p = plan(c);
    const auto reports = run_verify(p, c);
    long passed = 0;
    for (const auto& rep : reports) {
        out << summary_line(rep) << '\n';
        passed += rep.pass;
    }
    out << passed << "/" << reports.size() << " checks passed\n";
    if (!c.output.empty()) write_output(c.output, report_bundle(reports).dump(2) + "\n", out);
    return passed == static_cast<long>(reports.size()) ? exit_pass : exit_fail;
}

// --------------------------------------------------------------- dispatch

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectra of conformally covariant intertwinors on S^p x S^q"};
    app.name("intertwine-cli");
    app.require_subcommand(1);

    SpectrumConfig sc;
    auto* spectrum = app.add_subcommand("spectrum", "Tabulate the spectrum by recursion, closed form and factorisation");
    spectrum->add_option("--p", sc.p, "Dimension of the first sphere")->required();
    spectrum->add_option("--q", sc.q, "Dimension of the second sphere")->required();
    spectrum->add_option("--r", sc.r, "Half the operator order")->required();
    spectrum->add_option("--jmax", sc.jmax, "Largest j")->capture_default_str();
    spectrum->add_option("--kmax", sc.kmax, "Largest k")->capture_default_str();
    spectrum->add_option("--parity", sc.parity, "0, 1 or both")->capture_default_str();
    spectrum->add_option("--method", sc.method, "all, recursion, closed-form or factorized")->capture_default_str();
    spectrum->add_option("--format", sc.format, "csv or json")->capture_default_str();
    spectrum->add_option("--output", sc.output, "Output file (stdout when omitted)");

    VerifyConfig vc;
    int vp = 0, vq = 0;
    double vr = 0.0;
    auto* verify = app.add_subcommand("verify", "Check the defining identities numerically");
    auto* p_opt = verify->add_option("--p", vp, "Dimension of the first sphere (default sweep 1..3)");
    auto* q_opt = verify->add_option("--q", vq, "Dimension of the second sphere (default sweep 1..3)");
    auto* r_opt = verify->add_option("--r", vr, "Half the operator order (default sweep 0.37, 1.5, -0.8, 2.25)");
    verify->add_option("--jmax", vc.jmax, "Truncation degree in j")->capture_default_str();
    verify->add_option("--kmax", vc.kmax, "Truncation degree in k")->capture_default_str();
    verify->add_option("--check", vc.checks, "Check to run; repeatable")->take_all();
    verify->add_flag("--all", vc.all, "Run every check");
    verify->add_option("--seed", vc.seed, "Seed of the random test functions")->capture_default_str();
    verify->add_option("--functions", vc.functions, "Random functions per signature")->capture_default_str();
    verify->add_option("--loop-length", vc.loop_length, "Longest lattice loop")->capture_default_str();
    verify->add_option("--tolerance", vc.tolerance_overrides, "Override as check=value; repeatable")->take_all();
    verify->add_option("--output", vc.output, "JSON report bundle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_config;
    }

    try {
        if (*spectrum) return cmd_spectrum(sc, out);
        if (p_opt->count()) vc.p = vp;
        if (q_opt->count()) vc.q = vq;
        if (r_opt->count()) vc.r = vr;
        return cmd_verify(vc, out);
    } catch (const InvalidArgument& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return exit_config;
    } catch (const ConfigError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return exit_config;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_fail;
    }
}

}  // namespace intertwine::cli
