// pdsforge: construct, verify, and certify partial difference sets, amorphic
// Cayley partitions, and difference-set products, emitting reproducible JSON
// certificates.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pdsforge/certify.hpp>
#include <pdsforge/certjson.hpp>
#include <pdsforge/census.hpp>
#include <pdsforge/common.hpp>
#include <pdsforge/constructions.hpp>
#include <pdsforge/group.hpp>
#include <pdsforge/group_spec.hpp>
#include <pdsforge/products.hpp>

namespace {

using namespace pdsforge;

/// Orders up to this bound get the full-census verification tier; larger
/// objects are emitted under the construction-only tier with structural size
/// invariants.
constexpr std::uint64_t kCensusTierLimit = 20000;

bool census_tier(const GroupPtr& g) { return g->order() <= kCensusTierLimit; }

bool has_tag_prefix(const Certificate& c, const std::string& prefix) {
    for (const std::string& t : c.type_tags)
        if (t.rfind(prefix, 0) == 0) return true;
    return false;
}

bool has_tag(const Certificate& c, const std::string& tag) {
    for (const std::string& t : c.type_tags)
        if (t == tag) return true;
    return false;
}

struct Output {
    ordered_json doc;
    bool passed = true;
};

/// Certify every class of a partition into `results`; returns false if a
/// nonempty class fails to certify as a PDS.
bool emit_partition_results(const PartitionScheme& part, bool hash_only, unsigned threads,
                            ordered_json& results) {
    bool ok = true;
    for (std::size_t i = 0; i < part.classes.size(); ++i) {
        if (census_tier(part.group)) {
            Certificate c = verify_pds(part.classes[i], threads);
            results.push_back(json_certificate(part.labels[i], c, part.classes[i], hash_only));
            if (!part.classes[i].empty() && c.kind != SetKind::PDS) ok = false;
        } else {
            results.push_back(json_constructed_only(part.labels[i], part.classes[i],
                                                    part.classes[i].size(), hash_only));
        }
    }
    return ok;
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

struct ConstructFlags {
    std::string family;
    std::uint32_t q = 0, p = 0, m = 0, t = 0;
    std::string eps;
    bool twisted = false;
};

std::string descriptor_from_flags(const ConstructFlags& f) {
    auto need = [&](bool cond, const std::string& what) {
        require(cond, "BadParameters", "family " + f.family + " requires " + what);
    };
    if (f.family == "affine-g1" || f.family == "affine-g2" || f.family == "affine-abelian") {
        need(f.q && f.m && !f.eps.empty(), "--q, --m and --eps");
        int eps = spec_detail::parse_eps(f.eps);
        return f.family + ":" + std::to_string(f.q) + ":" + std::to_string(f.m) + ":" +
               (eps == 1 ? "+1" : "-1");
    }
    if (f.family == "affine-scheme-q4" || f.family == "affine-paley-q4" ||
        f.family == "paley-field") {
        need(f.q != 0, "--q");
        return f.family + ":" + std::to_string(f.q);
    }
    if (f.family == "semidirect-scheme" || f.family == "semidirect-paley") {
        need(f.p != 0 && f.t != 0, "--p and --t");
        return f.family + ":" + std::to_string(f.p) + ":" + std::to_string(f.t) + ":" +
               (f.twisted ? "twisted" : "abelian");
    }
    if (f.family == "latin3") return "latin3";
    fail("BadParameters", "unknown construction family '" + f.family + "'");
}

bool is_partition_family(const std::string& family) {
    return family == "affine-g1" || family == "affine-g2" || family == "affine-abelian" ||
           family == "affine-scheme-q4" || family == "semidirect-scheme" || family == "latin3";
}

Output run_construct(const ConstructFlags& f, bool hash_only, unsigned threads) {
    std::string desc = descriptor_from_flags(f);
    Output out;
    out.doc["family"] = desc;
    out.doc["provenance"] = provenance_of(desc);
    ordered_json results = ordered_json::array();

    if (f.family == "latin3") {
        Latin3Result r = latin3_partitions();
        out.doc["group"] = json_group(r.latin.group);
        out.doc["verification"] = "census";
        bool ok = emit_partition_results(r.latin.partition, hash_only, threads, results);
        ok = emit_partition_results(r.neg_latin.partition, hash_only, threads, results) && ok;
        out.passed = ok;
    } else if (is_partition_family(f.family)) {
        SchemeResult s = build_named_partition(desc);
        out.doc["family"] = s.partition.family;
        out.doc["group"] = json_group(s.group);
        out.doc["verification"] = census_tier(s.group) ? "census" : "constructed";
        out.passed = emit_partition_results(s.partition, hash_only, threads, results);
    } else {
        SetResult s = build_named_set(desc);
        out.doc["group"] = json_group(s.group);
        if (census_tier(s.group)) {
            out.doc["verification"] = "census";
            Certificate c = verify_pds(s.set, threads);
            results.push_back(json_certificate("D", c, s.set, hash_only));
            if (f.family == "paley-field" && f.q % 4 == 3)
                out.passed = c.kind == SetKind::DS && has_tag(c, "PaleyHadamard");
            else
                out.passed = c.kind == SetKind::PDS && has_tag(c, "PaleyType");
        } else {
            out.doc["verification"] = "constructed";
            results.push_back(
                json_constructed_only("D", s.set, (s.group->order() - 1) / 2, hash_only));
            out.passed = 2 * std::uint64_t{s.set.size()} == s.group->order() - 1;
        }
    }
    out.doc["results"] = std::move(results);
    return out;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

Output run_verify(const std::string& group_spec, const std::string& set_file,
                  const std::string& kind, bool hash_only, unsigned threads) {
    GroupPtr G = parse_group_spec(group_spec);
    std::ifstream in(set_file);
    require(in.good(), "BadParameters", "cannot open set file '" + set_file + "'");
    ordered_json parsed;
    try {
        in >> parsed;
    } catch (const std::exception& e) {
        fail("BadParameters", "set file is not valid JSON: " + std::string(e.what()));
    }
    require(parsed.is_array(), "BadParameters", "set file must hold a JSON array of element ids");
    std::vector<ElementId> ids;
    for (const auto& x : parsed) {
        require(x.is_number_unsigned(), "BadParameters",
                "set file entries must be nonnegative integers");
        std::uint64_t v = x.get<std::uint64_t>();
        require(v < G->order(), "HandleMismatch",
                "element id " + std::to_string(v) + " out of range for group of order " +
                    std::to_string(G->order()));
        ids.push_back(static_cast<ElementId>(v));
    }
    ElementSet S = ElementSet::of(G, ids);

    Output out;
    out.doc["family"] = "verify";
    out.doc["provenance"] = "none";
    out.doc["group"] = json_group(G);
    out.doc["verification"] = "census";
    out.doc["requested_kind"] = kind;
    Certificate c = verify_pds(S, threads);
    ordered_json results = ordered_json::array();
    ordered_json entry = json_certificate("S", c, S, hash_only);
    if (kind == "pds") {
        out.passed = c.kind == SetKind::PDS;
    } else if (kind == "ds") {
        out.passed = c.kind == SetKind::DS;
    } else if (kind == "skew-hadamard") {
        bool skew = is_skew_hadamard(S);
        entry["skew_hadamard"] = skew;
        out.passed = skew && c.kind == SetKind::DS;
    } else {
        fail("BadParameters", "unknown --kind '" + kind + "' (pds, ds, skew-hadamard)");
    }
    results.push_back(std::move(entry));
    out.doc["results"] = std::move(results);
    return out;
}

// ---------------------------------------------------------------------------
// scheme
// ---------------------------------------------------------------------------

AmorphicMode parse_amorphic_mode(const std::string& mode) {
    if (mode == "all") return AmorphicMode{};
    std::vector<std::string> tok = spec_detail::split(mode, ':');
    if (tok.size() == 3 && tok[0] == "sample") {
        AmorphicMode m;
        m.all = false;
        m.samples = spec_detail::parse_u32(tok[1], "sample count");
        m.seed = spec_detail::parse_u32(tok[2], "sample seed");
        return m;
    }
    fail("BadParameters", "--mode must be 'all' or 'sample:n:seed', got '" + mode + "'");
}

Output run_scheme(const std::string& sub, const ConstructFlags& f, const std::string& mode,
                  bool hash_only, unsigned threads) {
    std::string desc = descriptor_from_flags(f);
    require(is_partition_family(f.family), "BadParameters",
            "scheme commands need a partition family, got '" + f.family + "'");

    std::vector<SchemeResult> parts;
    if (f.family == "latin3") {
        Latin3Result r = latin3_partitions();
        parts.push_back(std::move(r.latin));
        parts.push_back(std::move(r.neg_latin));
    } else {
        parts.push_back(build_named_partition(desc));
    }

    Output out;
    out.doc["family"] = desc;
    out.doc["provenance"] = provenance_of(desc);
    out.doc["group"] = json_group(parts[0].group);
    out.doc["verification"] = "census";
    ordered_json results = ordered_json::array();
    ordered_json scheme_block;
    bool ok = true;
    for (const SchemeResult& s : parts) {
        ok = emit_partition_results(s.partition, hash_only, threads, results) && ok;
        if (sub == "constants") {
            SchemeConstants sc = scheme_constants(s.partition, threads);
            if (parts.size() == 1)
                scheme_block = json_scheme_constants(sc);
            else
                scheme_block[s.partition.family] = json_scheme_constants(sc);
        } else {
            AmorphicMode m = parse_amorphic_mode(mode);
            AmorphicReport rep = verify_amorphic(s.partition, m, threads);
            ok = ok && rep.amorphic;
            if (parts.size() == 1)
                scheme_block = json_amorphic(rep, mode);
            else
                scheme_block[s.partition.family] = json_amorphic(rep, mode);
        }
    }
    out.doc["results"] = std::move(results);
    out.doc["scheme"] = std::move(scheme_block);
    out.passed = ok;
    return out;
}

// ---------------------------------------------------------------------------
// product
// ---------------------------------------------------------------------------

ordered_json json_factor(const std::string& descriptor, const SetResult& s, bool hash_only,
                         unsigned threads) {
    ordered_json j;
    j["descriptor"] = descriptor;
    j["group"] = json_group(s.group);
    Certificate c = verify_pds(s.set, threads);
    j["certificate"] = json_certificate("factor", c, s.set, hash_only);
    return j;
}

Output run_product_set(const std::string& kind, const std::string& left,
                       const std::string& right, bool hash_only, unsigned threads) {
    SetResult L = build_named_set(left);
    SetResult R = build_named_set(right);
    SetResult D = kind == "paley" ? paley_product(L, R, threads)
                                  : stanton_sprott_product(L, R, threads);

    Output out;
    out.doc["family"] = "product-" + kind + ":(" + left + ")x(" + right + ")";
    out.doc["provenance"] = provenance_of("product-" + kind);
    out.doc["group"] = json_group(D.group);
    ordered_json factors = ordered_json::array();
    factors.push_back(json_factor(left, L, hash_only, threads));
    factors.push_back(json_factor(right, R, hash_only, threads));

    ordered_json results = ordered_json::array();
    if (census_tier(D.group)) {
        out.doc["verification"] = "census";
        Certificate c = verify_pds(D.set, threads);
        results.push_back(json_certificate("D", c, D.set, hash_only));
        if (kind == "paley")
            out.passed = c.kind == SetKind::PDS && has_tag(c, "PaleyType");
        else
            out.passed = c.kind == SetKind::DS && has_tag(c, "PaleyHadamard");
    } else {
        out.doc["verification"] = "constructed";
        results.push_back(
            json_constructed_only("D", D.set, (D.group->order() - 1) / 2, hash_only));
        out.passed = 2 * std::uint64_t{D.set.size()} == D.group->order() - 1;
    }
    out.doc["factors"] = std::move(factors);
    out.doc["results"] = std::move(results);
    return out;
}

Output run_product_combine3(const std::string& left, const std::string& right,
                            const std::string& mode, bool hash_only, unsigned threads) {
    SchemeResult A = build_named_partition(left);
    SchemeResult B = build_named_partition(right);
    SchemeResult C = combine3(A.partition, B.partition, mode, threads);

    Output out;
    out.doc["family"] = C.partition.family;
    out.doc["provenance"] = provenance_of("product-combine3");
    out.doc["group"] = json_group(C.group);
    out.doc["mode"] = mode;
    out.doc["verification"] = census_tier(C.group) ? "census" : "constructed";
    ordered_json results = ordered_json::array();
    bool ok = true;
    std::string want_tag = (mode == "LL" || mode == "CC") ? "Latin(" : "NegLatin(";
    for (std::size_t i = 0; i < C.partition.classes.size(); ++i) {
        if (census_tier(C.group)) {
            Certificate c = verify_pds(C.partition.classes[i], threads);
            results.push_back(json_certificate(C.partition.labels[i], c,
                                               C.partition.classes[i], hash_only));
            if (c.kind != SetKind::PDS || !has_tag_prefix(c, want_tag)) ok = false;
        } else {
            results.push_back(json_constructed_only(C.partition.labels[i],
                                                    C.partition.classes[i],
                                                    C.partition.classes[i].size(), hash_only));
        }
    }
    out.doc["results"] = std::move(results);
    out.passed = ok;
    return out;
}

Output run_product_recipe(const std::string& left, const std::string& right,
                          const std::string& scheme_desc, const std::string& inst_desc,
                          bool hash_only, unsigned threads) {
    SetResult L = build_named_set(left);
    SetResult R = build_named_set(right);
    SetResult D = paley_product(L, R, threads);

    SchemeResult scheme = build_named_partition(scheme_desc);
    Recipe recipe = recipe_extract(D.set, scheme.partition, threads);
    SetResult round = recipe_instantiate(recipe, scheme.partition, R.group, threads);
    bool roundtrip = round.set == D.set;

    SchemeResult target = build_named_partition(inst_desc);
    SetResult inst = recipe_instantiate(recipe, target.partition, R.group, threads);

    Output out;
    out.doc["family"] = "product-recipe:(" + left + ")x(" + right + ")";
    out.doc["provenance"] = provenance_of("product-recipe");
    out.doc["group"] = json_group(inst.group);
    out.doc["scheme"] = scheme_desc;
    out.doc["instantiated_over"] = inst_desc;
    ordered_json factors = ordered_json::array();
    factors.push_back(json_factor(left, L, hash_only, threads));
    factors.push_back(json_factor(right, R, hash_only, threads));
    out.doc["factors"] = std::move(factors);
    out.doc["recipe"] = json_recipe(recipe);
    out.doc["roundtrip_identity"] = roundtrip;

    ordered_json results = ordered_json::array();
    bool ok = roundtrip;
    if (census_tier(D.group)) {
        out.doc["verification"] = "census";
        Certificate orig = verify_pds(D.set, threads);
        Certificate got = verify_pds(inst.set, threads);
        results.push_back(json_certificate("D-product", orig, D.set, hash_only));
        results.push_back(json_certificate("D-instantiated", got, inst.set, hash_only));
        bool params_match = orig.v == got.v && orig.k == got.k && orig.lambda == got.lambda &&
                            orig.mu == got.mu && orig.kind == got.kind;
        out.doc["params_match"] = params_match;
        ok = ok && params_match && got.kind == SetKind::PDS;
    } else {
        out.doc["verification"] = "constructed";
        results.push_back(json_constructed_only("D-product", D.set,
                                                (D.group->order() - 1) / 2, hash_only));
        results.push_back(json_constructed_only("D-instantiated", inst.set,
                                                (inst.group->order() - 1) / 2, hash_only));
        ok = ok && D.set.size() == inst.set.size();
    }
    out.doc["results"] = std::move(results);
    out.passed = ok;
    return out;
}

bool is_usage_error(const std::string& code) {
    return code == "BadParameters" || code == "BadEps" || code == "TooLarge" ||
           code == "NotOddPrime" || code == "TTooSmall" || code == "MTooSmall" ||
           code == "OrderTooSmall" || code == "DegreeMismatch" || code == "HandleMismatch";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pdsforge: construct and certify partial difference sets"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 0;
    std::string out_path;
    bool hash_only = false;
    app.add_option("--threads", threads, "worker cap for census parallelism (0 = default)");
    app.add_option("--out", out_path, "write the certificate document to this path");
    app.add_flag("--hash-only", hash_only, "omit raw element id lists from the document");

    ConstructFlags cf;
    auto add_construct_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", cf.family, "construction family")->required();
        cmd->add_option("--q", cf.q, "field size q (odd prime power)");
        cmd->add_option("--p", cf.p, "odd prime p");
        cmd->add_option("--m", cf.m, "half-dimension m >= 2");
        cmd->add_option("--t", cf.t, "tower height t >= 2");
        cmd->add_option("--eps", cf.eps, "form type: +1 or -1");
        cmd->add_flag("--twisted", cf.twisted, "use the twisted (nonabelian) group law");
    };

    CLI::App* c_construct = app.add_subcommand("construct", "build a family and certify it");
    c_construct->fallthrough();
    add_construct_flags(c_construct);

    CLI::App* c_verify = app.add_subcommand("verify", "certify a set given as a JSON id array");
    c_verify->fallthrough();
    std::string v_group, v_set, v_kind = "pds";
    c_verify->add_option("--group", v_group, "group spec string")->required();
    c_verify->add_option("--set", v_set, "JSON file with an array of element ids")->required();
    c_verify->add_option("--kind", v_kind, "pds | ds | skew-hadamard");

    CLI::App* c_scheme = app.add_subcommand("scheme", "partition-level analysis");
    c_scheme->require_subcommand(1);
    c_scheme->fallthrough();
    CLI::App* c_constants = c_scheme->add_subcommand("constants", "structure constants tensor");
    CLI::App* c_amorphic = c_scheme->add_subcommand("amorphic", "check all/sampled fusions");
    c_constants->fallthrough();
    c_amorphic->fallthrough();
    std::string s_mode = "all";
    add_construct_flags(c_constants);
    add_construct_flags(c_amorphic);
    c_amorphic->add_option("--mode", s_mode, "all | sample:n:seed");

    CLI::App* c_product = app.add_subcommand("product", "product constructions");
    c_product->require_subcommand(1);
    c_product->fallthrough();
    std::string p_left, p_right, p_mode = "LL", p_scheme, p_inst;
    CLI::App* c_paley = c_product->add_subcommand("paley", "Paley-type product");
    CLI::App* c_ss = c_product->add_subcommand("stanton-sprott", "twin-order DS product");
    CLI::App* c_recipe = c_product->add_subcommand("recipe", "extract and re-instantiate");
    CLI::App* c_comb = c_product->add_subcommand("combine3", "3-class terrace combination");
    for (CLI::App* cmd : {c_paley, c_ss, c_recipe, c_comb}) {
        cmd->fallthrough();
        cmd->add_option("--left", p_left, "left factor descriptor")->required();
        cmd->add_option("--right", p_right, "right factor descriptor")->required();
    }
    c_comb->add_option("--mode", p_mode, "LL | LC | CL | CC")->required();
    c_recipe->add_option("--scheme", p_scheme, "partition to extract the recipe over")
        ->required();
    c_recipe->add_option("--instantiate", p_inst, "partition to re-instantiate over")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        ordered_json err;
        err["error"] = {{"code", "Usage"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    std::string command;
    for (int i = 0; i < argc; ++i) command += std::string(i ? " " : "") + argv[i];

    Output out;
    try {
        if (threads != 0) set_default_threads(threads);
        if (app.got_subcommand(c_construct)) {
            out = run_construct(cf, hash_only, threads);
        } else if (app.got_subcommand(c_verify)) {
            out = run_verify(v_group, v_set, v_kind, hash_only, threads);
        } else if (app.got_subcommand(c_scheme)) {
            const char* sub = c_scheme->got_subcommand(c_constants) ? "constants" : "amorphic";
            out = run_scheme(sub, cf, s_mode, hash_only, threads);
        } else {
            if (c_product->got_subcommand(c_paley))
                out = run_product_set("paley", p_left, p_right, hash_only, threads);
            else if (c_product->got_subcommand(c_ss))
                out = run_product_set("stanton-sprott", p_left, p_right, hash_only, threads);
            else if (c_product->got_subcommand(c_comb))
                out = run_product_combine3(p_left, p_right, p_mode, hash_only, threads);
            else
                out = run_product_recipe(p_left, p_right, p_scheme, p_inst, hash_only, threads);
        }
    } catch (const Error& e) {
        ordered_json err = json_error(e);
        std::cerr << err.dump(2) << "\n";
        return is_usage_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = {{"code", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }

    ordered_json doc;
    doc["schema_version"] = "1";
    doc["command"] = command;
    for (auto& [key, value] : out.doc.items()) doc[key] = value;
    doc["hash_algorithm"] = "sha256";
    doc["all_passed"] = out.passed;
    auto t1 = std::chrono::steady_clock::now();
    doc["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    std::string text = doc.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f.good()) {
            ordered_json err;
            err["error"] = {{"code", "BadParameters"},
                            {"message", "cannot open output path '" + out_path + "'"}};
            std::cerr << err.dump(2) << "\n";
            return 2;
        }
        f << text;
    } else {
        std::cout << text;
    }
    return out.passed ? 0 : 1;
}
