#include "k3taut/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>

namespace {

using namespace k3taut;

int default_order()
{
    if (const char* env = std::getenv("K3TAUT_ORDER")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw ValidationError("K3TAUT_ORDER is not an integer");
        }
    }
    return 10;
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

json parse_inline_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw ValidationError("malformed " + what + ": " + e.what());
    }
}

void emit(const json& j, const std::string& out_path)
{
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw ValidationError("cannot write file: " + out_path);
        out << text;
    }
}

ExportOptions::Mode parse_mode(const std::string& mode)
{
    if (mode == "mod-nl")
        return ExportOptions::Mode::mod_nl;
    if (mode == "keep-lambda")
        return ExportOptions::Mode::keep_lambda;
    if (mode == "full")
        return ExportOptions::Mode::full;
    throw ValidationError("unknown mode: " + mode);
}

std::optional<bool> hint_flag(int effective)
{
    if (effective < 0)
        return std::nullopt;
    return effective != 0;
}

struct Cli {
    std::string lattice_path;
    std::string class_text;
    std::string out_path;
    std::string mode = "mod-nl";
    std::string relation;
    std::string kind;
    std::string kappa_text;
    std::string cert_path;
    int order = std::numeric_limits<int>::min(); /* sentinel: use default */
    int effective = -1; /* -1: no hint, 0: not effective, 1: effective */
    bool normalize = false;
    bool no_splits = false;
};

int cmd_series(const Cli& cli)
{
    int order = cli.order != std::numeric_limits<int>::min() ? cli.order : default_order();
    if (order < 0)
        throw ValidationError("order must be nonnegative");
    /* `order` counts coefficients past the leading exponent. */
    RationalQSeries s = cli.kind == "n0" ? n0_series(order) : n1_series(order);
    std::vector<Rat> coeffs;
    for (int e = s.lead(); e <= s.lead() + order; ++e)
        coeffs.push_back(s.coefficient(e));
    emit(json{{"kind", cli.kind},
              {"series", series_to_json(RationalQSeries(s.lead(), s.lead() + order, coeffs))}},
         cli.out_path);
    return 0;
}

int cmd_admissible(const Cli& cli)
{
    PolarizedLattice pl = lattice_from_json(load_json_file(cli.lattice_path));
    Vec l = vec_from_json(parse_inline_json(cli.class_text, "class vector"));
    bool adm = is_admissible(pl, l, hint_flag(cli.effective));
    emit(json{{"class", vec_to_json(l)}, {"admissible", adm}}, cli.out_path);
    return 0;
}

int cmd_splits(const Cli& cli)
{
    PolarizedLattice pl = lattice_from_json(load_json_file(cli.lattice_path));
    Vec l = vec_from_json(parse_inline_json(cli.class_text, "class vector"));
    SplitEnumeration se = enumerate_admissible_splits(pl, l, hint_flag(cli.effective));
    json pairs = json::array();
    for (const auto& sp : se.pairs)
        pairs.push_back(json{{"l1", vec_to_json(sp.l1)}, {"l2", vec_to_json(sp.l2)}});
    json und = json::array();
    for (const auto& sp : se.undecidable)
        und.push_back(json{{"l1", vec_to_json(sp.l1)}, {"l2", vec_to_json(sp.l2)}});
    emit(json{{"class", vec_to_json(l)}, {"pairs", pairs}, {"undecidable", und}}, cli.out_path);
    return 0;
}

int cmd_export(const Cli& cli)
{
    PolarizedLattice pl = lattice_from_json(load_json_file(cli.lattice_path));
    Calculus calc(pl);
    ExportOptions opts;
    opts.mode = parse_mode(cli.mode);
    opts.normalize = cli.normalize;
    opts.include_splits_within_lambda = !cli.no_splits;
    RelationReport report{TautExpression(0), {}, {}, {}, 0, 0};
    if (cli.relation == "wdvv" || cli.relation == "getzler") {
        if (cli.class_text.empty())
            throw ValidationError("--class is required for wdvv/getzler");
        Vec l = vec_from_json(parse_inline_json(cli.class_text, "class vector"));
        report = cli.relation == "wdvv"
                     ? export_wdvv(calc, l, opts, hint_flag(cli.effective))
                     : export_getzler(calc, l, opts, hint_flag(cli.effective));
    } else if (cli.relation == "diagonal") {
        report = diagonal_decomposition(calc, opts);
    } else {
        throw ValidationError("unknown relation: " + cli.relation);
    }
    emit(json{{"relation", cli.relation}, {"report", report_to_json(report)}}, cli.out_path);
    return 0;
}

int cmd_reduce(const Cli& cli)
{
    PolarizedLattice pl = lattice_from_json(load_json_file(cli.lattice_path));
    json spec = parse_inline_json(cli.kappa_text, "kappa spec");
    KappaSymbol target = kappa_spec_from_json(spec);
    for (const auto& [v, a] : target.classes)
        if (!is_admissible(pl, v, hint_flag(cli.effective)))
            throw ComputeError("inadmissible class in kappa spec: " + vec_to_string(v));
    std::map<Vec, bool> hints;
    if (cli.effective >= 0)
        for (const auto& [v, a] : target.classes)
            hints[v] = cli.effective != 0;
    Reducer reducer(Calculus(pl), hints);
    const NLCertificate& cert = reducer.reduce_kappa(target);
    std::cerr << "certified " << symbol_to_string(cert.target) << " via " << cert.steps.size()
              << " step(s); " << cert.deps.size() << " dependencies, " << reducer.kb().all().size()
              << " certificates in the knowledge base\n";
    for (const auto& d : cert.deps)
        std::cerr << "  depends on " << symbol_to_string(d) << "\n";
    emit(bundle_to_json(pl, reducer.kb(), cert.target), cli.out_path);
    return 0;
}

int cmd_certify(const Cli& cli)
{
    json j = load_json_file(cli.cert_path);
    PolarizedLattice pl = lattice_from_json(j.at("lattice"));
    Calculus calc(pl);
    KnowledgeBase kb;
    std::string diff;
    for (const auto& cj : j.at("certificates")) {
        NLCertificate cert = certificate_from_json(cj);
        if (!verify_certificate(calc, cert, kb, &diff)) {
            std::cout << "FAIL " << symbol_to_string(cert.target) << ": " << diff << "\n";
            return 1;
        }
        std::cout << "ok " << symbol_to_string(cert.target) << "\n";
        kb.insert(std::move(cert));
    }
    BaseSymbol target = symbol_from_json(j.at("target"));
    if (!kb.has(target)) {
        std::cout << "FAIL: bundle does not certify its target\n";
        return 1;
    }
    std::cout << "certificate bundle verified: " << symbol_to_string(target) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact intersection calculus and Noether-Lefschetz reduction "
                 "for moduli of lattice-polarized K3 surfaces"};
    app.require_subcommand(1);
    Cli cli;

    auto* series = app.add_subcommand("series", "reduced Gromov-Witten count series");
    series->add_option("--kind", cli.kind, "n0 or n1")->required()->check(CLI::IsMember({"n0", "n1"}));
    series->add_option("--order", cli.order, "truncation order (default K3TAUT_ORDER or 10)");
    series->add_option("--out", cli.out_path, "output file");

    auto* adm = app.add_subcommand("admissible", "test admissibility of a class");
    adm->add_option("--lattice", cli.lattice_path)->required();
    adm->add_option("--class", cli.class_text)->required();
    adm->add_option("--effective", cli.effective, "effectivity hint for the boundary case (0/1)");
    adm->add_option("--out", cli.out_path);

    auto* splits = app.add_subcommand("splits", "admissible two-part splits of a class");
    splits->add_option("--lattice", cli.lattice_path)->required();
    splits->add_option("--class", cli.class_text)->required();
    splits->add_option("--effective", cli.effective);
    splits->add_option("--out", cli.out_path);

    auto* exp = app.add_subcommand("export-relation", "exported WDVV/Getzler/diagonal relation");
    exp->add_option("--relation", cli.relation)->required()->check(CLI::IsMember({"wdvv", "getzler", "diagonal"}));
    exp->add_option("--lattice", cli.lattice_path)->required();
    exp->add_option("--class", cli.class_text);
    exp->add_option("--mode", cli.mode)->check(CLI::IsMember({"mod-nl", "keep-lambda", "full"}));
    exp->add_flag("--normalize", cli.normalize);
    exp->add_flag("--no-splits", cli.no_splits, "skip within-lattice split enumeration");
    exp->add_option("--effective", cli.effective);
    exp->add_option("--out", cli.out_path);

    auto* reduce = app.add_subcommand("reduce", "produce a Noether-Lefschetz certificate");
    reduce->add_option("--lattice", cli.lattice_path)->required();
    reduce->add_option("--kappa", cli.kappa_text, "{\"classes\": [[..],..], \"c2\": b}")->required();
    reduce->add_option("--effective", cli.effective);
    reduce->add_option("--out", cli.out_path);

    auto* certify = app.add_subcommand("certify", "verify a certificate bundle");
    certify->add_option("--certificate", cli.cert_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (series->parsed())
            return cmd_series(cli);
        if (adm->parsed())
            return cmd_admissible(cli);
        if (splits->parsed())
            return cmd_splits(cli);
        if (exp->parsed())
            return cmd_export(cli);
        if (reduce->parsed())
            return cmd_reduce(cli);
        if (certify->parsed())
            return cmd_certify(cli);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ComputeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
