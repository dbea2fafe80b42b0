// urykit: exact-arithmetic toolkit for finite rational metric spaces --
// validation, shortest-path completion, bi-Lipschitz extension and matching,
// Urysohn-style level towers, Cantor-tree incomparability certificates, and
// chain/ratio-profile set coding. All reports are JSON with exact rationals;
// exit 0 = property holds, 1 = property fails (with a counterexample
// report), 2 = input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "urykit/backforth.hpp"
#include "urykit/cantor.hpp"
#include "urykit/chain.hpp"
#include "urykit/extension.hpp"
#include "urykit/io.hpp"
#include "urykit/metric_space.hpp"
#include "urykit/urysohn.hpp"

using namespace urykit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

std::optional<std::size_t> env_budget() {
    const char* raw = std::getenv("URYKIT_BUDGET");
    if (!raw)
        return std::nullopt;
    try {
        return std::stoull(raw);
    } catch (...) {
        throw input_error("URYKIT_BUDGET is not a nonnegative integer");
    }
}

std::size_t pick_budget(std::size_t flag_value, bool flag_given, std::size_t fallback) {
    if (flag_given)
        return flag_value;
    if (auto env = env_budget())
        return *env;
    return fallback;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
    std::vector<unsigned> out;
    if (text.empty())
        return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw input_error("'" + text + "' is not a comma-separated list of integers");
        out.push_back(static_cast<unsigned>(std::stoul(tok)));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

Json violations_json(const ValidationReport& rep) {
    Json arr = Json::array();
    for (const MetricViolation& v : rep.violations) {
        Json item;
        item["axiom"] = axiom_name(v.axiom);
        item["i"] = v.i;
        item["j"] = v.j;
        if (v.axiom == MetricAxiom::Triangle)
            item["k"] = v.k;
        item["lhs"] = rat_str(v.lhs);
        item["rhs"] = rat_str(v.rhs);
        arr.push_back(std::move(item));
    }
    return arr;
}

Json transfer_lines_json(const std::vector<TransferLine>& lines) {
    Json arr = Json::array();
    for (const TransferLine& l : lines) {
        Json item;
        item["n"] = l.n;
        item["lower"] = rat_str(l.lower);
        item["value"] = rat_str(l.value);
        item["upper"] = rat_str(l.upper);
        item["pass"] = l.pass;
        arr.push_back(std::move(item));
    }
    return arr;
}

std::vector<std::pair<std::size_t, std::size_t>> read_pairs_file(const std::string& path) {
    Json doc = Json::parse(read_text_file(path), nullptr, false);
    if (doc.is_discarded())
        throw input_error(path + ": not valid JSON");
    if (!doc.contains("pairs"))
        throw input_error(path + ": missing \"pairs\" key");
    return pairs_from_json(doc["pairs"], path);
}

int cmd_validate(const std::string& path) {
    FiniteMetricSpace s = read_space(path);
    ValidationReport rep = validate_metric(s);
    Json doc;
    doc["ok"] = rep.ok();
    if (!rep.ok())
        doc["violations"] = violations_json(rep);
    emit(doc);
    return rep.ok() ? kExitOk : kExitFail;
}

int cmd_complete(const std::string& path, const std::string& out) {
    WeightedGraph g = read_graph(path);
    FiniteMetricSpace s = path_completion(g);
    if (out.empty())
        emit(space_to_json(s));
    else
        write_space(s, out);
    return kExitOk;
}

int cmd_spectrum(const std::string& path) {
    FiniteMetricSpace s = read_space(path);
    Json doc;
    Json arr = Json::array();
    for (const Rat& v : spectrum(s))
        arr.push_back(rat_str(v));
    doc["spectrum"] = std::move(arr);
    emit(doc);
    return kExitOk;
}

int cmd_extend(const std::string& x_path, const std::string& y_path, const std::string& map_path,
               const std::string& theta_text, const std::string& out) {
    Rat theta = parse_rat(theta_text);
    FiniteMetricSpace x = read_space(x_path);
    FiniteMetricSpace y = read_space(y_path);
    PartialMap m = make_partial_map(x, y, read_pairs_file(map_path));
    ExtensionResult res = extend_one_point(x, m, theta);
    Json doc;
    doc["ok"] = true;
    doc["theta"] = theta_text;
    doc["lambda"] = rat_str(res.lambda);
    doc["distortion"] = rat_str(distortion(res.map).value);
    doc["pairs"] = pairs_to_json(res.map.pairs);
    doc["target"] = space_to_json(res.target);
    emit(doc);
    if (!out.empty())
        write_space(res.target, out);
    return kExitOk;
}

int cmd_match(const std::string& x_path, const std::string& y_path, const std::string& lambda_text,
              std::size_t points) {
    Rat lambda = parse_rat(lambda_text);
    FiniteMetricSpace x = read_space(x_path);
    FiniteMetricSpace y = read_space(y_path);
    MatchPlan plan = MatchPlan::standard(lambda, points);
    MatchResult res = almost_isometry(x, y, plan);
    Json doc;
    doc["ok"] = res.success;
    doc["lambda"] = lambda_text;
    if (res.success) {
        doc["points"] = res.map.pairs.size();
        doc["pairs"] = pairs_to_json(res.map.pairs);
        doc["distortion"] = rat_str(res.distortion);
        emit(doc);
        return kExitOk;
    }
    doc["step"] = res.failure.step;
    doc["side"] = std::string(1, res.failure.side);
    doc["point"] = res.failure.point;
    doc["bound"] = rat_str(res.failure.bound);
    doc["reason"] = res.failure.reason;
    emit(doc);
    return kExitFail;
}

int cmd_urysohn_build(unsigned levels, std::size_t budget, std::string out_dir,
                      long long sample_beyond, std::size_t samples, std::uint64_t seed) {
    if (out_dir.empty())
        out_dir = ".";
    UrysohnLevels ls = initial_levels();
    for (unsigned n = 1; n <= levels; ++n) {
        if (sample_beyond >= 0 && n > static_cast<std::uint64_t>(sample_beyond))
            build_level_sampled(ls, samples, seed + n, budget);
        else
            build_level(ls, budget);
    }
    Json doc;
    doc["ok"] = true;
    doc["levels"] = ls.count();
    Json sizes = Json::array(), faithful = Json::array();
    for (const auto& lvl : ls.levels) {
        sizes.push_back(lvl.space.size());
        faithful.push_back(lvl.faithful);
    }
    doc["sizes"] = std::move(sizes);
    doc["faithful"] = std::move(faithful);
    if (!out_dir.empty()) {
        for (std::size_t n = 0; n < ls.count(); ++n)
            write_space(ls.levels[n].space, out_dir + "/A" + std::to_string(n) + ".json");
        doc["out"] = out_dir;
    }
    emit(doc);
    return kExitOk;
}

int cmd_urysohn_check(std::size_t n, const std::string& dir, std::size_t budget) {
    UrysohnLevels view;
    for (std::size_t i = 0; i < n; ++i)
        view.levels.push_back({FiniteMetricSpace{}, true}); // placeholders, never touched
    view.levels.push_back({read_space(dir + "/A" + std::to_string(n) + ".json"), true});
    view.levels.push_back({read_space(dir + "/A" + std::to_string(n + 1) + ".json"), true});
    LevelCheck c = check_level_property(view, n, budget);
    Json doc;
    doc["ok"] = c.ok;
    doc["n"] = n;
    if (!c.ok) {
        Json ce = Json::array();
        for (const Rat& v : c.counterexample)
            ce.push_back(rat_str(v));
        doc["counterexample"] = std::move(ce);
    }
    emit(doc);
    return c.ok ? kExitOk : kExitFail;
}

int cmd_cantor_build(const std::string& a_text, unsigned depth, unsigned base, std::size_t budget,
                     const std::string& out) {
    BranchSpace bs = branch_space(parse_unsigned_list(a_text), depth, base, budget);
    if (out.empty())
        emit(space_to_json(bs.space));
    else
        write_space(bs.space, out);
    return kExitOk;
}

int cmd_cantor_certify(const std::string& a_text, const std::string& b_text, unsigned n,
                       unsigned base, unsigned depth, std::size_t budget) {
    std::vector<unsigned> A = parse_unsigned_list(a_text);
    std::vector<unsigned> B = parse_unsigned_list(b_text);
    IncompCertificate cert = incomparability_certificate(A, B, Int(n), base, depth, budget);
    Json doc;
    doc["certified"] = cert.certified;
    doc["A"] = A;
    doc["B"] = B;
    doc["n"] = n;
    doc["base"] = base;
    doc["depth"] = depth;
    if (cert.certified) {
        doc["k"] = cert.k;
        doc["small_pairs"] = cert.small_pairs;
        doc["cross_checks"] = cert.cross_checks;
    } else {
        doc["reason"] = cert.reason;
    }
    emit(doc);
    return cert.certified ? kExitOk : kExitFail;
}

int cmd_cantor_family(std::size_t count, const std::string& bound_text, std::uint64_t seed,
                      const std::string& transform, const std::string& magnitude_text) {
    Int bound{bound_text};
    GapFamily fam = ad_family(count, bound, seed);
    std::string tag = "raw";
    if (transform == "square") {
        for (auto& m : fam.members)
            m = gap_transform(m, GapTransformKind::Square);
        tag = "square";
    } else if (transform == "factorial") {
        Int mag{magnitude_text};
        for (auto& m : fam.members)
            m = gap_transform(m, GapTransformKind::Factorial, mag);
        tag = "factorial";
    } else if (!transform.empty() && transform != "none") {
        throw input_error("unknown transform '" + transform + "'");
    }
    Json doc;
    doc["count"] = count;
    doc["element_bound"] = bound_text;
    doc["seed"] = seed;
    doc["transform"] = tag;
    Json members = Json::array();
    for (const auto& m : fam.members) {
        Json one = Json::array();
        for (const Int& x : m)
            one.push_back(x.str());
        members.push_back(std::move(one));
    }
    doc["members"] = std::move(members);
    Json inters = Json::array();
    for (std::size_t i = 0; i < fam.members.size(); ++i)
        for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
            std::vector<Int> common = set_intersection(fam.members[i], fam.members[j]);
            Json item;
            item["i"] = i;
            item["j"] = j;
            item["size"] = common.size();
            Json elems = Json::array();
            for (const Int& x : common)
                elems.push_back(x.str());
            item["elements"] = std::move(elems);
            inters.push_back(std::move(item));
        }
    doc["intersections"] = std::move(inters);
    emit(doc);
    return kExitOk;
}

int cmd_chain_encode(const std::string& a_text, std::size_t m, bool m_given, unsigned K,
                     const std::string& gap_text, std::size_t budget, const std::string& out) {
    std::set<std::size_t> A;
    for (unsigned a : parse_unsigned_list(a_text))
        A.insert(a);
    if (!m_given)
        m = A.empty() ? 1 : *A.rbegin() + 1;
    ChainedSpace cs = encode_set(A, m, K, parse_rat(gap_text), budget);
    if (out.empty())
        emit(chained_to_json(cs));
    else
        write_text_file(out, chained_to_json(cs).dump(2) + "\n");
    return kExitOk;
}

int cmd_chain_decode(const std::string& path, unsigned K, const std::string& mode) {
    ChainedSpace cs = read_chained(path);
    DecodeThreshold t;
    if (mode == "source")
        t = DecodeThreshold::Source;
    else if (mode == "image")
        t = DecodeThreshold::Image;
    else
        throw input_error("mode must be 'source' or 'image'");
    std::set<std::size_t> A = decode_set(cs, K, t);
    Json doc;
    doc["mode"] = mode;
    doc["K"] = K;
    doc["A"] = A;
    emit(doc);
    return kExitOk;
}

int cmd_chain_verify(const std::string& src_path, const std::string& dst_path,
                     const std::string& map_path, unsigned K) {
    ChainedSpace src = read_chained(src_path);
    ChainedSpace dst = read_chained(dst_path);
    PartialMap f = make_partial_map(src.space, dst.space, read_pairs_file(map_path));
    TransferReport rep = verify_transfer(src, dst, f, K);
    Json doc;
    doc["ok"] = rep.all_pass;
    doc["K"] = K;
    doc["stage_bounds"] = transfer_lines_json(rep.stage_bounds);
    doc["ratio_bounds"] = transfer_lines_json(rep.ratio_bounds);
    emit(doc);
    return rep.all_pass ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for finite rational metric spaces"};
    app.require_subcommand(1);

    std::string space_path, graph_path, x_path, y_path, map_path, out_path;
    std::string theta_text = "2/1", lambda_text = "2/1", gap_text = "16/1";
    std::string a_text, b_text, transform = "none", bound_text = "1000000";
    std::string magnitude_text = "10000", mode = "source", dir = ".";
    std::size_t points = 8, budget = 0, count = 2, samples = 50, m_stages = 0, check_n = 0;
    unsigned levels = 2, depth = 16, base = 2, n_const = 10, K = 1;
    long long sample_beyond = -1;
    std::uint64_t seed = 1;

    auto* validate = app.add_subcommand("validate", "check the metric axioms of a space file");
    validate->add_option("space", space_path)->required();

    auto* complete = app.add_subcommand("complete", "shortest-path completion of a weighted graph");
    complete->add_option("graph", graph_path)->required();
    complete->add_option("--out", out_path);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "sorted set of occurring distances");
    spectrum_cmd->add_option("space", space_path)->required();

    auto* extend = app.add_subcommand("extend", "one-point bi-Lipschitz extension");
    extend->add_option("--theta", theta_text)->required();
    extend->add_option("X", x_path)->required();
    extend->add_option("Y", y_path)->required();
    extend->add_option("map", map_path)->required();
    extend->add_option("--out", out_path);

    auto* match = app.add_subcommand("match", "back-and-forth bi-Lipschitz matching");
    match->add_option("--lambda", lambda_text)->required();
    match->add_option("--points", points);
    match->add_option("X", x_path)->required();
    match->add_option("Y", y_path)->required();

    auto* urysohn = app.add_subcommand("urysohn", "rational Urysohn level tower");
    urysohn->require_subcommand(1);
    auto* ubuild = urysohn->add_subcommand("build", "build levels A0..An");
    auto* ubudget_opt = ubuild->add_option("--budget", budget);
    ubuild->add_option("--levels", levels);
    ubuild->add_option("--out", out_path, "level file directory")->capture_default_str();
    ubuild->add_option("--sample-beyond", sample_beyond,
                       "grow levels above this index in sampled (non-faithful) mode");
    ubuild->add_option("--samples", samples);
    ubuild->add_option("--seed", seed);
    auto* ucheck = urysohn->add_subcommand("check", "verify the level property at n");
    ucheck->add_option("--n", check_n)->required();
    ucheck->add_option("--dir", dir);
    auto* ucheck_budget_opt = ucheck->add_option("--budget", budget);

    auto* cantor = app.add_subcommand("cantor", "Cantor-tree subspaces and certificates");
    cantor->require_subcommand(1);
    auto* cbuild = cantor->add_subcommand("build", "truncated branch space D_A");
    cbuild->add_option("--A", a_text)->required();
    cbuild->add_option("--depth", depth);
    cbuild->add_option("--base", base);
    auto* cbudget_opt = cbuild->add_option("--budget", budget);
    cbuild->add_option("--out", out_path);
    auto* ccert = cantor->add_subcommand("certify", "incomparability certificate for D_A vs D_B");
    ccert->add_option("--A", a_text)->required();
    ccert->add_option("--B", b_text)->required();
    ccert->add_option("--n", n_const);
    ccert->add_option("--depth", depth);
    ccert->add_option("--base", base);
    auto* ccert_budget_opt = ccert->add_option("--budget", budget);
    auto* cfam = cantor->add_subcommand("family", "seeded almost disjoint family");
    cfam->add_option("--count", count);
    cfam->add_option("--bound", bound_text);
    cfam->add_option("--seed", seed);
    cfam->add_option("--transform", transform, "none | square | factorial");
    cfam->add_option("--magnitude-budget", magnitude_text);

    auto* chain = app.add_subcommand("chain", "epsilon-chain profiles and set coding");
    chain->require_subcommand(1);
    auto* cenc = chain->add_subcommand("encode", "code a set into an ultrametric chain");
    cenc->add_option("--A", a_text, "comma-separated indices; empty set if omitted");
    auto* cenc_m_opt = cenc->add_option("--m", m_stages, "chain length; default max(A)+1");
    cenc->add_option("--K", K);
    cenc->add_option("--gap", gap_text);
    auto* cenc_budget_opt = cenc->add_option("--budget", budget);
    cenc->add_option("--out", out_path);
    auto* cdec = chain->add_subcommand("decode", "read a profile back off a chained space");
    cdec->add_option("--mode", mode, "source (2K^2) | image (4K^4)");
    cdec->add_option("--K", K);
    cdec->add_option("chained", space_path)->required();
    auto* cver = chain->add_subcommand("verify", "transfer inequalities under a certified map");
    cver->add_option("--K", K)->required();
    cver->add_option("src", x_path)->required();
    cver->add_option("dst", y_path)->required();
    cver->add_option("map", map_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Json doc;
        doc["error"] = e.what();
        emit(doc);
        return kExitInput;
    }

    try {
        if (*validate)
            return cmd_validate(space_path);
        if (*complete)
            return cmd_complete(graph_path, out_path);
        if (*spectrum_cmd)
            return cmd_spectrum(space_path);
        if (*extend)
            return cmd_extend(x_path, y_path, map_path, theta_text, out_path);
        if (*match)
            return cmd_match(x_path, y_path, lambda_text, points);
        if (*ubuild)
            return cmd_urysohn_build(
                levels, pick_budget(budget, !ubudget_opt->empty(), kDefaultUrysohnBudget),
                out_path, sample_beyond, samples, seed);
        if (*ucheck)
            return cmd_urysohn_check(
                check_n, dir,
                pick_budget(budget, !ucheck_budget_opt->empty(), kDefaultUrysohnBudget));
        if (*cbuild)
            return cmd_cantor_build(
                a_text, depth, base,
                pick_budget(budget, !cbudget_opt->empty(), kDefaultCantorBudget), out_path);
        if (*ccert)
            return cmd_cantor_certify(
                a_text, b_text, n_const, base, depth,
                pick_budget(budget, !ccert_budget_opt->empty(), kDefaultCantorBudget));
        if (*cfam)
            return cmd_cantor_family(count, bound_text, seed, transform, magnitude_text);
        if (*cenc)
            return cmd_chain_encode(
                a_text, m_stages, !cenc_m_opt->empty(), K, gap_text,
                pick_budget(budget, !cenc_budget_opt->empty(), kDefaultChainBudget), out_path);
        if (*cdec)
            return cmd_chain_decode(space_path, K, mode);
        if (*cver)
            return cmd_chain_verify(x_path, y_path, map_path, K);
        throw input_error("no subcommand selected");
    } catch (const error& e) {
        Json doc;
        doc["error"] = e.what();
        emit(doc);
        return kExitInput;
    }
}
