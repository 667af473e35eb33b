#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cfmm/axioms.hpp"
#include "cfmm/descriptor.hpp"
#include "cfmm/divergence.hpp"
#include "cfmm/errors.hpp"
#include "cfmm/fees.hpp"
#include "cfmm/oracle.hpp"
#include "cfmm/swap.hpp"

namespace cfmm::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json, Table };

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// JSON has no infinities; non-finite values become null.
ordered_json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::stod(num(v));
}

using Cell = std::variant<std::monostate, double, std::string, bool>;

std::string cell_text(const Cell& c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double d) const { return num(d); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(V{}, c);
}

ordered_json cell_json(const Cell& c) {
    struct V {
        ordered_json operator()(std::monostate) const { return nullptr; }
        ordered_json operator()(double d) const { return jnum(d); }
        ordered_json operator()(const std::string& s) const { return s; }
        ordered_json operator()(bool b) const { return b; }
    };
    return std::visit(V{}, c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

/// Rows under a fixed header. `record` tables hold exactly one row and
/// render as a JSON object instead of an array.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool record = false;
};

ordered_json table_json(const Table& t) {
    auto row_obj = [&](const std::vector<Cell>& row) {
        ordered_json o = ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = cell_json(row[i]);
        return o;
    };
    if (t.record) return row_obj(t.rows.at(0));
    ordered_json a = ordered_json::array();
    for (const auto& row : t.rows) a.push_back(row_obj(row));
    return a;
}

void render(const Table& t, Format f, std::ostream& os) {
    if (f == Format::Json) {
        os << table_json(t).dump(2) << "\n";
        return;
    }
    if (f == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << csv_field(t.columns[i]);
        }
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << csv_field(cell_text(row[i]));
            }
            os << "\n";
        }
        return;
    }
    if (t.record) {
        std::size_t w = 0;
        for (const auto& c : t.columns) w = std::max(w, c.size());
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << t.columns[i] << std::string(w - t.columns[i].size() + 2, ' ')
               << cell_text(t.rows[0][i]) << "\n";
        }
        return;
    }
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], cell_text(row[i]).size());
    auto line = [&](auto get) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::string v = get(i);
            s += v;
            if (i + 1 < w.size()) s += std::string(w[i] - v.size() + 2, ' ');
        }
        os << s << "\n";
    };
    line([&](std::size_t i) { return t.columns[i]; });
    for (const auto& row : t.rows) line([&](std::size_t i) { return cell_text(row[i]); });
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError(what + ": not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

Reserves parse_reserves(const std::string& s) {
    const auto v = parse_list(s, "--reserves");
    if (v.size() != 2) throw UsageError("--reserves expects a,b");
    return {v[0], v[1]};
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = parse_number(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
    }
    return out;
}

/// Kind name, inline JSON descriptor, or path to a descriptor file; --param
/// values override descriptor params.
AmmModel resolve_model(const std::string& spec, const std::vector<std::string>& kvs) {
    if (spec.empty()) throw UsageError("--model is required");
    const auto params = parse_params(kvs);
    std::string text;
    if (!spec.empty() && spec.front() == '{') {
        text = spec;
    } else if (std::filesystem::is_regular_file(spec)) {
        std::ifstream in(spec);
        if (!in) throw UsageError("cannot read model file " + spec);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        return make_model(spec, params);
    }
    if (params.empty()) return parse_model_descriptor(text);
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed model descriptor: ") + e.what());
    }
    if (!j.is_object()) throw ModelError("model descriptor must be a JSON object");
    if (!j.contains("params")) j["params"] = ordered_json::object();
    if (!j["params"].is_object()) throw ModelError("descriptor params must be an object", "params");
    for (const auto& [k, v] : params) j["params"][k] = v;
    return parse_model_descriptor(j.dump());
}

std::string method_name(FeeMethod m) {
    switch (m) {
        case FeeMethod::Ode: return "ode";
        case FeeMethod::ClosedForm: return "closed-form";
        case FeeMethod::FeeLess: return "fee-less";
        case FeeMethod::Zero: return "zero";
    }
    return "";
}

std::string verdict_name(const AxiomVerdict& v) {
    switch (v.kind) {
        case VerdictKind::Satisfied: return v.numeric_only ? "satisfied(numeric)" : "satisfied";
        case VerdictKind::Violated: return "violated";
        case VerdictKind::NotApplicable: return "n/a";
    }
    return "";
}

std::string verdict_short(const AxiomVerdict& v) {
    switch (v.kind) {
        case VerdictKind::Satisfied: return v.numeric_only ? "yes*" : "yes";
        case VerdictKind::Violated: return "no";
        case VerdictKind::NotApplicable: return "n/a";
    }
    return "";
}

std::string claim_name(const AxiomClaim& c) {
    if (c.not_applicable) return "n/a";
    if (!c.holds) return "violated";
    return c.numeric_only ? "satisfied(numeric)" : "satisfied";
}

ordered_json reserves_json(Reserves r) { return ordered_json::array({jnum(r.a), jnum(r.b)}); }

// ---------------------------------------------------------------------------
// Commands

struct Globals {
    std::string model;
    std::vector<std::string> params;
    std::string format = "table";
    std::string out;
};

struct QuoteArgs {
    std::string dir = "AtoB";
    double amount = 0.0;
    std::string reserves;
    double fee = 0.0;
};

Table cmd_quote(const AmmModel& m, const QuoteArgs& a) {
    const Reserves r = parse_reserves(a.reserves);
    const FeeLevel gamma(a.fee);
    const bool a_to_b = a.dir == "AtoB";
    Table t;
    t.record = true;
    t.columns = {"direction", "input", "output", "post_a", "post_b", "avg_price", "exhausts_reserve",
                 "method"};
    std::vector<Cell> row;
    if (gamma.gamma() == 0.0) {
        const SwapQuote q = a_to_b ? swap_y(m, a.amount, r) : swap_x(m, a.amount, r);
        row = {a.dir,
               q.input_amount,
               q.output_amount,
               q.post_reserves.a,
               q.post_reserves.b,
               q.avg_price ? Cell(*q.avg_price) : Cell(),
               q.exhausts_reserve,
               std::string("fee-less")};
    } else {
        const FeeSwapResult q =
            a_to_b ? swap_y_fee(m, gamma, a.amount, r) : swap_x_fee(m, gamma, a.amount, r);
        row = {a.dir,
               q.input,
               q.output,
               q.post_reserves.a,
               q.post_reserves.b,
               q.input > 0.0 ? Cell(q.output / q.input) : Cell(),
               false,
               method_name(q.method)};
    }
    t.columns.push_back("price");
    row.push_back(price(m, r));
    if (gamma.gamma() > 0.0 && gamma.gamma() < 1.0) {
        const BidAsk ba = bid_ask(m, gamma, r);
        t.columns.insert(t.columns.end(), {"bid", "ask"});
        row.insert(row.end(), {ba.bid, ba.ask});
    }
    t.rows.push_back(std::move(row));
    return t;
}

struct PoolArgs {
    std::string reserves;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> probe;
};

Table cmd_pool(const AmmModel& m, const PoolArgs& a) {
    const Reserves r = parse_reserves(a.reserves);
    if (a.alpha.has_value() == a.beta.has_value()) {
        throw UsageError("pool needs exactly one of --alpha or --beta");
    }
    const PoolingPlan plan = a.alpha ? pool_deposit(m, r, *a.alpha) : pool_deposit_b(m, r, *a.beta);
    const Reserves pooled{r.a + plan.delta_a, r.b + plan.delta_b};
    const double x = a.probe.value_or(0.1 * r.a);
    const double before = swap_y(m, x, r).output_amount;
    const double after = swap_y(m, x, pooled).output_amount;
    std::string note;
    if (m.kind() == ModelKind::MStable) {
        note = "price is constant; deposit made at the current reserve ratio";
    } else if (m.claims(Axiom::ScaleInvariant)) {
        note = "scale invariant; deposit made at the current reserve ratio";
    } else {
        note = "counter deposit solved numerically";
    }
    Table t;
    t.record = true;
    t.columns = {"alpha",       "beta",          "price_before",   "price_after",
                 "probe_input", "payout_before", "payout_after", "liquidity_increased", "note"};
    t.rows.push_back({plan.delta_a, plan.delta_b, plan.price_before, plan.price_after, x, before,
                      after, after >= before - 1e-9 * r.b, note});
    return t;
}

Table cmd_oracle(const AmmModel& m, const std::string& reserves) {
    const Reserves r = parse_reserves(reserves);
    const OraclePoint o = oracle_point(m, r);
    Table t;
    t.record = true;
    t.columns = {"price", "p_a", "p_b", "p_aa", "p_ab", "p_bb", "liquidity_condition", "source"};
    t.rows.push_back({o.price, o.p_a, o.p_b, o.p_aa, o.p_ab, o.p_bb, liquidity_condition(o),
                      std::string(o.source == DerivativeSource::Analytic ? "analytic"
                                                                         : "finite-difference")});
    return t;
}

struct FeeCurveArgs {
    std::string reserves;
    std::string gammas = "0";
    std::string xs;
    double x_min = 0.0;
    std::optional<double> x_max;
    int samples = 11;
    bool compare = false;
};

Table cmd_feecurve(const AmmModel& m, const FeeCurveArgs& a) {
    const Reserves r = parse_reserves(a.reserves);
    std::vector<FeeLevel> gammas;
    for (double g : parse_list(a.gammas, "--gammas")) gammas.emplace_back(g);
    std::vector<double> xs;
    if (!a.xs.empty()) {
        xs = parse_list(a.xs, "--xs");
    } else {
        if (!a.x_max) throw UsageError("feecurve needs --xs or --x-max");
        if (a.samples < 2) throw UsageError("--samples must be at least 2");
        for (int i = 0; i < a.samples; ++i) {
            xs.push_back(a.x_min + (*a.x_max - a.x_min) * i / (a.samples - 1));
        }
    }
    Table t;
    t.columns = {"gamma", "x", "y"};
    if (a.compare) t.columns.insert(t.columns.end(), {"y_fee_on_sold", "y_fee_on_bought"});
    for (const FeeLevel& g : gammas) {
        for (double x : xs) {
            std::vector<Cell> row{g.gamma(), x, swap_y_fee(m, g, x, r).output};
            if (a.compare) {
                row.push_back(swap_fee_on_sold(m, g, x, r).output);
                row.push_back(swap_fee_on_bought(m, g, x, r).output);
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

struct DivergenceArgs {
    std::string reserves;
    double fee = 0.0;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> delta;
    std::string coordinate = "trade";
    std::optional<double> z_min;
    std::optional<double> z_max;
    std::optional<double> p_min;
    std::optional<double> p_max;
    int samples = 101;
    bool no_gain = false;
};

DivergenceSetup make_setup(const AmmModel& m, const DivergenceArgs& a) {
    const Reserves r = parse_reserves(a.reserves);
    const FeeLevel g(a.fee);
    if (a.delta) {
        if (a.alpha || a.beta) throw UsageError("--delta excludes --alpha and --beta");
        return DivergenceSetup::proportional(m, g, r, *a.delta);
    }
    if (a.alpha && a.beta) return DivergenceSetup(m, g, r, *a.alpha, *a.beta);
    if (a.alpha) return DivergenceSetup::pool_a(m, g, r, *a.alpha);
    if (a.beta) return DivergenceSetup::pool_b(m, g, r, *a.beta);
    throw UsageError("divergence needs --delta, --alpha or --beta");
}

int cmd_divergence(const AmmModel& m, const DivergenceArgs& a, Format f, std::ostream& os,
                   std::ostream& err) {
    const DivergenceSetup s = make_setup(m, a);
    if (a.samples < 2) throw UsageError("--samples must be at least 2");
    DivergenceCurve curve;
    if (a.coordinate == "trade") {
        const Reserves p = s.pooled();
        curve = sample_divergence_trades(s, a.z_min.value_or(-p.b), a.z_max.value_or(p.a),
                                         a.samples, !a.no_gain);
    } else {
        const double p0 = s.initial_price();
        const double lo = a.p_min.value_or(p0 / 10.0);
        const double hi = a.p_max.value_or(p0 * 10.0);
        if (!(lo > 0.0 && hi > lo)) throw UsageError("price range must satisfy 0 < p-min < p-max");
        std::vector<double> ps;
        for (int i = 0; i < a.samples; ++i) ps.push_back(lo * std::pow(hi / lo, double(i) / (a.samples - 1)));
        curve = sample_divergence_prices(s, ps, !a.no_gain);
    }
    const auto& gi = curve.gain_interval;
    if (f == Format::Json) {
        ordered_json j;
        j["coordinate_kind"] = a.coordinate;
        j["pooled"] = reserves_json(s.pooled());
        j["initial_price"] = jnum(s.initial_price());
        ordered_json arr = ordered_json::array();
        for (const auto& x : curve.samples) {
            arr.push_back({{"coordinate", jnum(x.coordinate)}, {"delta", jnum(x.delta)}, {"branch", x.branch}});
        }
        j["samples"] = arr;
        if (gi) {
            j["gain_interval"] = {{"p_low", jnum(gi->p_low)}, {"p_high", jnum(gi->p_high)},
                                  {"z_low", jnum(gi->z_low)}, {"z_high", jnum(gi->z_high)}};
        } else {
            j["gain_interval"] = nullptr;
        }
        os << j.dump(2) << "\n";
        return kExitOk;
    }
    Table t;
    t.columns = {"coordinate", "delta", "branch"};
    for (const auto& x : curve.samples) t.rows.push_back({x.coordinate, x.delta, x.branch});
    render(t, f, os);
    // CSV stays a single schema; the interval goes to the diagnostic stream.
    std::ostream& side = f == Format::Csv ? err : os;
    if (gi) {
        side << "gain_interval p_low=" << num(gi->p_low) << " p_high=" << num(gi->p_high)
             << " z_low=" << num(gi->z_low) << " z_high=" << num(gi->z_high) << "\n";
    } else if (!a.no_gain) {
        side << "gain_interval none\n";
    }
    return kExitOk;
}

struct AxiomArgs {
    bool all_catalog = false;
    GridConfig grid;
};

int cmd_axioms(const std::vector<AmmModel>& models, const AxiomArgs& a, Format f,
               std::ostream& os, std::ostream& err) {
    a.grid.validate();
    bool mismatch = false;
    Table t;
    t.columns.push_back("model");
    for (Axiom ax : kAllAxioms) t.columns.emplace_back(axiom_label(ax));
    t.columns.push_back("matches_claims");
    ordered_json arr = ordered_json::array();
    for (const AmmModel& m : models) {
        const AxiomReport rep = check_all(m, a.grid);
        const AxiomClaims claims = m.claims();
        const auto bad = claim_mismatches(rep, claims);
        mismatch = mismatch || !bad.empty();
        for (Axiom ax : bad) {
            err << "mismatch: " << m.label() << " " << axiom_label(ax) << ": verdict "
                << verdict_name(rep.at(ax)) << ", claimed " << claim_name(claim_for(claims, ax))
                << "; " << rep.at(ax).detail << "\n";
        }
        std::vector<Cell> row{m.label()};
        ordered_json jm;
        jm["model"] = m.label();
        jm["kind"] = m.kind_name();
        ordered_json vs = ordered_json::array();
        for (const AxiomVerdict& v : rep.verdicts) {
            row.push_back(f == Format::Table ? verdict_short(v) : verdict_name(v));
            ordered_json jv;
            jv["axiom"] = std::string(axiom_label(v.axiom));
            jv["verdict"] = verdict_name(v);
            jv["claimed"] = claim_name(claim_for(claims, v.axiom));
            jv["numeric_only"] = v.numeric_only;
            jv["tolerance"] = jnum(v.tolerance);
            jv["detail"] = v.detail;
            if (v.witness) {
                ordered_json pts = ordered_json::array();
                for (const auto& p : v.witness->points) pts.push_back(reserves_json(p));
                ordered_json vals = ordered_json::array();
                for (double x : v.witness->values) vals.push_back(jnum(x));
                jv["witness"] = {{"points", pts}, {"values", vals},
                                 {"parameter", jnum(v.witness->parameter)},
                                 {"description", v.witness->description}};
            }
            if (!v.trend.empty()) {
                ordered_json tr = ordered_json::array();
                for (const auto& s : v.trend) tr.push_back({jnum(s.probe), jnum(s.value)});
                jv["trend"] = tr;
            }
            vs.push_back(jv);
        }
        row.push_back(bad.empty());
        jm["verdicts"] = vs;
        jm["matches_claims"] = bad.empty();
        arr.push_back(jm);
        t.rows.push_back(std::move(row));
    }
    if (f == Format::Json) {
        os << (a.all_catalog ? arr : arr.at(0)).dump(2) << "\n";
    } else {
        render(t, f, os);
        if (f == Format::Table) os << "yes* = verified numerically only\n";
    }
    return mismatch ? kExitMismatch : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constant-function market makers: quotes, fees, pooling, divergence "
                 "loss and axiom verification"};
    app.name("cfmm");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--model", g.model, "Model kind, inline JSON descriptor or descriptor file");
    app.add_option("--param", g.params, "Model parameter name=value (repeatable)");
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("--out", g.out, "Write results to this file instead of stdout");

    QuoteArgs qa;
    auto* quote = app.add_subcommand("quote", "Swap quote with optional fee");
    quote->add_option("--dir", qa.dir, "AtoB deposits A, BtoA deposits B")
        ->check(CLI::IsMember({"AtoB", "BtoA"}));
    quote->add_option("--amount", qa.amount, "Deposited amount")->required();
    quote->add_option("--reserves", qa.reserves, "Reserves a,b")->required();
    quote->add_option("--fee", qa.fee, "Fee level gamma in [0, 1]");

    PoolArgs pa;
    auto* pool = app.add_subcommand("pool", "Price-preserving liquidity deposit");
    pool->add_option("--reserves", pa.reserves, "Reserves a,b")->required();
    auto* o_alpha = pool->add_option("--alpha", pa.alpha, "Deposit of A");
    pool->add_option("--beta", pa.beta, "Deposit of B")->excludes(o_alpha);
    pool->add_option("--probe", pa.probe, "Trade size of A for the liquidity check (default a/10)");

    std::string oracle_reserves;
    auto* oracle = app.add_subcommand("oracle", "Price and its partial derivatives");
    oracle->add_option("--reserves", oracle_reserves, "Reserves a,b")->required();

    FeeCurveArgs fa;
    auto* feecurve = app.add_subcommand("feecurve", "Fee swap payouts across fee levels and inputs");
    feecurve->add_option("--reserves", fa.reserves, "Reserves a,b")->required();
    feecurve->add_option("--gammas", fa.gammas, "Comma-separated fee levels");
    feecurve->add_option("--xs", fa.xs, "Comma-separated inputs");
    feecurve->add_option("--x-min", fa.x_min, "Smallest input of the uniform grid");
    feecurve->add_option("--x-max", fa.x_max, "Largest input of the uniform grid");
    feecurve->add_option("--samples", fa.samples, "Inputs in the uniform grid");
    feecurve->add_flag("--compare-structures", fa.compare,
                       "Add fee-on-sold and fee-on-bought payouts");

    DivergenceArgs da;
    auto* divergence = app.add_subcommand("divergence", "Divergence loss sweep");
    divergence->add_option("--reserves", da.reserves, "Reserves a,b before the injection")->required();
    divergence->add_option("--fee", da.fee, "Fee level gamma");
    divergence->add_option("--alpha", da.alpha, "Injected A");
    divergence->add_option("--beta", da.beta, "Injected B");
    divergence->add_option("--delta", da.delta, "Proportional injection (alpha = delta a, beta = delta b)");
    divergence->add_option("--coordinate", da.coordinate, "Sweep over trades or prices")
        ->check(CLI::IsMember({"trade", "price"}));
    divergence->add_option("--z-min", da.z_min, "Smallest signed trade (default -pooled b)");
    divergence->add_option("--z-max", da.z_max, "Largest signed trade (default pooled a)");
    divergence->add_option("--p-min", da.p_min, "Smallest price (default P/10)");
    divergence->add_option("--p-max", da.p_max, "Largest price (default 10 P)");
    divergence->add_option("--samples", da.samples, "Number of sweep points");
    divergence->add_flag("--no-gain-interval", da.no_gain, "Skip the gain-interval search");

    AxiomArgs aa;
    auto* axioms = app.add_subcommand("axioms", "Numerical axiom verification");
    axioms->add_flag("--all-catalog", aa.all_catalog, "Verify every real-world catalog model");
    axioms->add_option("--grid-lo", aa.grid.lo, "Smallest grid reserve");
    axioms->add_option("--grid-hi", aa.grid.hi, "Largest grid reserve");
    axioms->add_option("--grid-points", aa.grid.points, "Grid points per axis");
    axioms->add_option("--probe-decades", aa.grid.probe_decades, "Decades probed for limit axioms");
    axioms->add_option("--tol-scale", aa.grid.tol_scale, "Multiplier on every tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    const Format fmt = g.format == "csv" ? Format::Csv : g.format == "json" ? Format::Json : Format::Table;
    std::ofstream file;
    if (!g.out.empty()) {
        file.open(g.out);
        if (!file) {
            err << "error: cannot open " << g.out << " for writing\n";
            return kExitUsage;
        }
    }
    std::ostream& os = g.out.empty() ? out : file;

    try {
        if (axioms->parsed()) {
            std::vector<AmmModel> models;
            if (aa.all_catalog) {
                if (!g.model.empty()) throw UsageError("--all-catalog excludes --model");
                models = real_world_catalog();
            } else {
                models.push_back(resolve_model(g.model, g.params));
            }
            return cmd_axioms(models, aa, fmt, os, err);
        }
        const AmmModel model = resolve_model(g.model, g.params);
        if (quote->parsed()) {
            render(cmd_quote(model, qa), fmt, os);
        } else if (pool->parsed()) {
            render(cmd_pool(model, pa), fmt, os);
        } else if (oracle->parsed()) {
            render(cmd_oracle(model, oracle_reserves), fmt, os);
        } else if (feecurve->parsed()) {
            render(cmd_feecurve(model, fa), fmt, os);
        } else if (divergence->parsed()) {
            return cmd_divergence(model, da, fmt, os, err);
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ModelError& e) {
        err << "error: " << e.what() << (e.key().empty() ? "" : " (key: " + e.key() + ")") << "\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}

}  // namespace cfmm::cli
