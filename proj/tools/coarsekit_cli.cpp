#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coarsekit/decomposition.hpp"
#include "coarsekit/errors.hpp"
#include "coarsekit/json_io.hpp"
#include "coarsekit/products.hpp"
#include "coarsekit/profiles.hpp"

using namespace coarsekit;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json parse_json(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

SpacePtr load_space(const std::string& path) {
    return space_from_json(parse_json(read_file(path), path));
}

Profile load_profile(const std::string& path) {
    return profile_from_json(parse_json(read_file(path), path));
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

std::string pretty(const ordered_json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

double to_double(const std::string& tok) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("not a number: " + tok);
    }
}

long long to_int(const std::string& tok) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("not an integer: " + tok);
    }
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    for (const auto& tok : split(text, ',')) out.push_back(to_double(tok));
    return out;
}

std::vector<long long> parse_ints(const std::string& text) {
    std::vector<long long> out;
    for (const auto& tok : split(text, ',')) out.push_back(to_int(tok));
    return out;
}

// "0-4,30-34,50" over points 0..n-1
PointSet parse_ranges(const std::string& text, int n) {
    PointSet s(n);
    for (const auto& tok : split(text, ',')) {
        std::size_t dash = tok.find('-', 1);
        long long lo, hi;
        if (dash == std::string::npos) {
            lo = hi = to_int(tok);
        } else {
            lo = to_int(tok.substr(0, dash));
            hi = to_int(tok.substr(dash + 1));
        }
        if (lo < 0 || hi >= n || lo > hi)
            throw ValidationError("point range out of bounds: " + tok);
        for (long long i = lo; i <= hi; ++i) s.set(static_cast<int>(i));
    }
    return s;
}

Norm norm_of(const std::string& s) {
    if (s == "l1") return Norm::L1;
    if (s == "sup") return Norm::Sup;
    throw ValidationError("unknown norm: " + s);
}

RingSchedule schedule_of(const std::string& s) {
    if (s == "standard") return RingSchedule::Standard;
    if (s == "compact") return RingSchedule::Compact;
    throw ValidationError("unknown ring schedule: " + s);
}

int emit_report(const Report& rep, const std::string& out) {
    write_output(out, pretty(report_to_json(rep)));
    if (rep.pass()) return 0;
    std::cerr << "failed condition: " << rep.first_failure() << "\n";
    return 3;
}

struct Options {
    // common
    std::string space, yspace, out, set, zset, norm = "l1", ring = "standard";
    std::vector<std::string> spaces;  // factor list
    double r = 1.0, s = 1.0, scale = 1.0;
    int m = 1, k = 1, truncation = 2;
    bool parallel = false;
    long long seed = 2026;
    // space generation
    int interval = 0;
    std::string grid, table, product, wproduct, dunion, subspace, points,
        weights, wkind = "asymptotic", name;
    // profiles
    std::vector<std::string> args;
    std::string scales;
    bool literal = false;
    // scaling
    std::string family, construction = "asdim", kind = "interval";
};

Exec exec_of(const Options& o) {
    return o.parallel ? Exec::Parallel : Exec::Serial;
}

int cmd_space(const Options& o) {
    int chosen = (o.interval > 0) + !o.grid.empty() + !o.table.empty() +
                 !o.product.empty() + !o.wproduct.empty() +
                 !o.dunion.empty() + !o.subspace.empty();
    if (chosen != 1)
        throw ValidationError(
            "choose exactly one of --interval/--grid/--table/--product/"
            "--wproduct/--union/--subspace");

    SpacePtr X;
    if (o.interval > 0) {
        X = make_interval(o.interval, o.scale, o.name);
    } else if (!o.grid.empty()) {
        std::vector<std::int64_t> dims;
        for (const auto& tok : split(o.grid, 'x')) dims.push_back(to_int(tok));
        X = make_grid(std::move(dims), norm_of(o.norm), o.scale, o.name);
    } else if (!o.table.empty()) {
        X = load_space(o.table);
        if (!o.name.empty()) X = relabel(X, X->labels(), o.name);
    } else if (!o.product.empty()) {
        std::vector<SpacePtr> fs;
        for (const auto& f : split(o.product, ',')) fs.push_back(load_space(f));
        X = make_product(std::move(fs), norm_of(o.norm), o.name);
    } else if (!o.wproduct.empty()) {
        std::vector<SpacePtr> fs;
        for (const auto& f : split(o.wproduct, ','))
            fs.push_back(load_space(f));
        WeightedKind wk = o.wkind == "reduced" ? WeightedKind::Reduced
                                               : WeightedKind::Asymptotic;
        if (o.wkind != "reduced" && o.wkind != "asymptotic")
            throw ValidationError("unknown weighted kind: " + o.wkind);
        X = make_weighted_product(std::move(fs), parse_doubles(o.weights), wk,
                                   o.name);
    } else if (!o.dunion.empty()) {
        std::vector<SpacePtr> fs;
        for (const auto& f : split(o.dunion, ',')) fs.push_back(load_space(f));
        X = make_disjoint_union(std::move(fs), o.name);
    } else {
        SpacePtr parent = load_space(o.subspace);
        if (o.points.empty())
            throw ValidationError("--subspace requires --points");
        X = make_subspace(parent, parse_ranges(o.points, parent->n()), o.name);
    }

    if (auto bad = X->validate_full()) {
        std::cerr << "metric invalid on (" << X->labels()[bad->i] << ", "
                  << X->labels()[bad->j] << ", " << X->labels()[bad->k]
                  << "): d=" << bad->dij << "," << bad->dik << "," << bad->dkj
                  << "\n";
        return 2;
    }
    std::cerr << "metric valid: " << X->n() << " points\n";
    write_output(o.out, pretty(space_to_json(X)));
    return 0;
}

int cmd_decompose_asdim(const Options& o) {
    SpacePtr X = load_space(o.space);
    RingSchedule sch = schedule_of(o.ring);
    SubsetArray parts = brick_parts(X, brick_length(o.r, o.m, sch));
    AugmentedMatrix M = asdim_matrix(parts, o.r, o.m, sch, exec_of(o));
    return emit_report(verify_asdim_matrix(M, o.r, exec_of(o)), o.out);
}

int cmd_decompose_perp(const Options& o) {
    SpacePtr X = load_space(o.space);
    if (o.set.empty()) throw ValidationError("perp requires --set");
    PointSet Y = parse_ranges(o.set, X->n());
    SubsetArray yp = perp_array(X, Y, o.s, o.m);
    return emit_report(verify_perp(X, Y, yp, o.s), o.out);
}

int cmd_decompose_refine(const Options& o) {
    SpacePtr X = load_space(o.space);
    PointSet A = o.set.empty() ? PointSet::full(X->n())
                               : parse_ranges(o.set, X->n());
    Dim0Certificate cert = dim0_certificate(X, A, o.r);
    return emit_report(refine_disjoint(X, A, cert, o.s).report, o.out);
}

int cmd_decompose_product(const Options& o) {
    SpacePtr X = load_space(o.space);
    if (o.yspace.empty()) throw ValidationError("product requires --yspace");
    SpacePtr Y = load_space(o.yspace);
    RingSchedule sch = schedule_of(o.ring);
    AugmentedMatrix Mx = asdim_matrix(brick_parts(X, brick_length(o.r, o.m, sch)),
                                      o.r, o.m, sch, exec_of(o));
    Dim0Certificate ycert = dim0_certificate(Y, PointSet::full(Y->n()), o.r);
    RefineResult ref = refine_disjoint(Y, PointSet::full(Y->n()), ycert, o.s);
    if (static_cast<int>(ref.parts.size()) != o.m)
        throw ValidationError(
            "refinement yields " + std::to_string(ref.parts.size()) +
            " parts; matrix has " + std::to_string(o.m) +
            " rows (adjust -m or the second factor)");
    ProductHandle P = ProductHandle::make(X, Y, norm_of(o.norm));
    return emit_report(
        product_split(P, Mx, ref.parts, o.s, exec_of(o)).report, o.out);
}

int cmd_decompose_trunc(const Options& o) {
    if (o.spaces.size() < 2)
        throw ValidationError("trunc-product requires at least two --space");
    std::vector<SpacePtr> fs;
    for (const auto& f : o.spaces) fs.push_back(load_space(f));
    return emit_report(
        truncated_product_decomposition(fs, o.k, o.s, o.truncation,
                                        norm_of(o.norm), exec_of(o))
            .report,
        o.out);
}

int cmd_profile(const std::string& op, const Options& o) {
    if (op == "schedule") {
        if (o.args.size() != 1)
            throw ValidationError("profile schedule takes one profile file");
        if (o.scales.empty())
            throw ValidationError("profile schedule requires --scales");
        Schedule sch = apc_schedule(load_profile(o.args[0]),
                                    parse_doubles(o.scales),
                                    o.literal ? ScheduleMode::Literal
                                              : ScheduleMode::Repaired);
        write_output(o.out, pretty(schedule_to_json(sch)));
        return 0;
    }
    if (o.args.size() != 2)
        throw ValidationError("profile " + op + " takes two files");
    if (op == "pullback") {
        Profile p = load_profile(o.args[0]);
        ProfileFn beta =
            profile_fn_from_json(parse_json(read_file(o.args[1]), o.args[1]));
        write_output(o.out, pretty(profile_to_json(pullback(p, beta))));
        return 0;
    }
    Profile a = load_profile(o.args[0]);
    Profile b = load_profile(o.args[1]);
    Profile res = op == "union" ? union_profile(a, b) : product_profile(a, b);
    write_output(o.out, pretty(profile_to_json(res)));
    return 0;
}

int cmd_envelope(const Options& o) {
    if (o.args.size() != 2)
        throw ValidationError("envelope takes two space files");
    EnvelopeTable t = coarse_envelope(load_space(o.args[0]),
                                      load_space(o.args[1]));
    std::cerr << "forward/backward control "
              << (t.finite() ? "finite" : "not finite") << " at "
              << t.thresholds.size() << " thresholds\n";
    write_output(o.out, envelope_csv(t));
    return 0;
}

int cmd_scaling(const Options& o) {
    if (o.construction != "asdim")
        throw ValidationError("unknown construction: " + o.construction);
    RingSchedule sch = schedule_of(o.ring);
    std::string csv = "N,construction,r,m,max_bound\n";
    for (long long N : parse_ints(o.family)) {
        SpacePtr X;
        if (o.kind == "interval")
            X = make_interval(static_cast<int>(N), o.scale);
        else if (o.kind == "grid")
            X = make_grid({N, N}, norm_of(o.norm), o.scale);
        else
            throw ValidationError("unknown family kind: " + o.kind);
        AugmentedMatrix M = asdim_matrix(
            brick_parts(X, brick_length(o.r, o.m, sch)), o.r, o.m, sch,
            exec_of(o));
        ExtReal worst(0.0);
        for (const auto& c : M.certs)
            if (worst <= c.bound) worst = c.bound;
        csv += std::to_string(N) + "," + o.construction + "," +
               ExtReal(o.r).str() + "," + std::to_string(o.m) + "," +
               worst.str() + "\n";
    }
    write_output(o.out, csv);
    return 0;
}

int cmd_verify(const Options& o) {
    if (o.args.size() != 1)
        throw ValidationError("verify takes one report file");
    Report given =
        report_from_json(parse_json(read_file(o.args[0]), o.args[0]));
    Report fresh = reverify(given, exec_of(o));
    for (const auto& [name, ok] : fresh.verdicts)
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    std::string diff = report_diff(given, fresh);
    if (!diff.empty()) {
        std::cerr << "report mismatch: " << diff << "\n";
        return 3;
    }
    if (!fresh.pass()) {
        std::cerr << "failed condition: " << fresh.first_failure() << "\n";
        return 3;
    }
    std::cout << "verified: " << fresh.construction << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    std::function<int()> action;

    CLI::App app{"set-valued matrix decompositions over finite metric spaces"};
    app.require_subcommand(1);
    app.add_option("--seed", o.seed, "seed for randomized generation");
    app.add_flag("--parallel", o.parallel, "use the parallel kernels");

    auto* sp = app.add_subcommand("space", "generate or validate a space");
    sp->add_option("--interval", o.interval, "path space on N points");
    sp->add_option("--grid", o.grid, "grid dims, e.g. 8x8");
    sp->add_option("--table", o.table, "space JSON file to validate");
    sp->add_option("--product", o.product, "comma-separated factor files");
    sp->add_option("--wproduct", o.wproduct, "comma-separated factor files");
    sp->add_option("--union", o.dunion, "comma-separated part files");
    sp->add_option("--subspace", o.subspace, "parent space file");
    sp->add_option("--points", o.points, "point ranges, e.g. 0-4,10");
    sp->add_option("--weights", o.weights, "per-factor weights, e.g. 1,2");
    sp->add_option("--wkind", o.wkind, "asymptotic|reduced");
    sp->add_option("--scale", o.scale, "metric scale factor");
    sp->add_option("--norm", o.norm, "l1|sup");
    sp->add_option("--name", o.name, "space name");
    sp->add_option("-o,--out", o.out, "output file (default stdout)");
    sp->callback([&] { action = [&] { return cmd_space(o); }; });

    auto* de = app.add_subcommand("decompose", "run a certified construction");
    de->require_subcommand(1);
    auto add_common = [&](CLI::App* c, bool multi_space) {
        if (multi_space)
            c->add_option("--space", o.spaces, "factor space files");
        else
            c->add_option("--space", o.space, "space file")->required();
        c->add_option("-r", o.r, "component scale");
        c->add_option("-s", o.s, "separation scale");
        c->add_option("-m", o.m, "row count");
        c->add_option("-k", o.k, "head factor count");
        c->add_option("--norm", o.norm, "l1|sup");
        c->add_option("--schedule", o.ring, "standard|compact ring spacing");
        c->add_option("-o,--out", o.out, "report file (default stdout)");
    };
    auto* da = de->add_subcommand("asdim", "dimension matrix on bricks");
    add_common(da, false);
    da->callback([&] { action = [&] { return cmd_decompose_asdim(o); }; });
    auto* dp = de->add_subcommand("perp", "perpendicular ring array");
    add_common(dp, false);
    dp->add_option("--set", o.set, "base set ranges");
    dp->callback([&] { action = [&] { return cmd_decompose_perp(o); }; });
    auto* dr = de->add_subcommand("refine", "split into separated parts");
    add_common(dr, false);
    dr->add_option("--set", o.set, "subset ranges (default all)");
    dr->callback([&] { action = [&] { return cmd_decompose_refine(o); }; });
    auto* dx = de->add_subcommand("product", "split a two-factor product");
    add_common(dx, false);
    dx->add_option("--yspace", o.yspace, "second factor file")->required();
    dx->callback([&] { action = [&] { return cmd_decompose_product(o); }; });
    auto* dt = de->add_subcommand("trunc-product", "truncated product family");
    add_common(dt, true);
    dt->add_option("--truncation", o.truncation, "factors kept unpinned");
    dt->callback([&] { action = [&] { return cmd_decompose_trunc(o); }; });

    auto* pr = app.add_subcommand("profile", "decomposition budget algebra");
    pr->require_subcommand(1);
    for (const char* op : {"union", "product", "pullback", "schedule"}) {
        auto* c = pr->add_subcommand(op);
        c->add_option("files", o.args, "input files");
        c->add_option("-o,--out", o.out, "output file (default stdout)");
        if (std::string(op) == "schedule") {
            c->add_option("--scales", o.scales, "non-decreasing scale list");
            c->add_flag("--literal", o.literal,
                        "take each budget at its own scale");
        }
        std::string name = op;
        c->callback([&, name] { action = [&, name] { return cmd_profile(name, o); }; });
    }

    auto* en = app.add_subcommand("envelope",
                                  "control functions between two metrics");
    en->add_option("files", o.args, "two space files");
    en->add_option("-o,--out", o.out, "CSV file (default stdout)");
    en->callback([&] { action = [&] { return cmd_envelope(o); }; });

    auto* sc = app.add_subcommand("scaling", "bound uniformity across sizes");
    sc->add_option("--family", o.family, "comma-separated sizes");
    sc->add_option("--construction", o.construction, "construction name");
    sc->add_option("--kind", o.kind, "interval|grid family");
    sc->add_option("-r", o.r, "component scale");
    sc->add_option("-m", o.m, "row count");
    sc->add_option("--scale", o.scale, "metric scale factor");
    sc->add_option("--norm", o.norm, "l1|sup");
    sc->add_option("--schedule", o.ring, "standard|compact ring spacing");
    sc->add_option("-o,--out", o.out, "CSV file (default stdout)");
    sc->callback([&] { action = [&] { return cmd_scaling(o); }; });

    auto* ve = app.add_subcommand("verify", "re-verify a report from scratch");
    ve->add_option("files", o.args, "report file");
    ve->callback([&] { action = [&] { return cmd_verify(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const ConstructionDefect& e) {
        std::cerr << "construction defect: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
