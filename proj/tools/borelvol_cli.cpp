// Command line front end.  Subcommands compute the ideal tetrahedron volume,
// the cocycle on four flags, Veronese flags of given points, the reflection
// orbit of the base tetrahedron, cocycle maximization, the synthetic
// propagation experiment, the partition bound table, and a self test.
//
// Output formats:
//   volume, borel      one line holding the value (17 significant digits)
//   veronese, maximize JSON document
//   orbit              csv/table: word,length,z0_re,z0_im,...,z3_re,z3_im,volume,sign
//   propagate          csv/table: k,eps,defect,prop_dist,rep_dist,delta_dist,status
//   partition-check    csv/table: partition,parts_value,full_value,relation
// Infinity prints as "inf" in the *_re column with *_im 0.  Every failure
// writes one line {"error": "..."} to stderr and exits nonzero.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "borelvol/document.hpp"
#include "borelvol/selftest.hpp"

namespace bv = borelvol;

namespace {

struct CommonOpts {
    std::string input, output, format = "csv";
    int n = 0, words = -1, steps = -1;
    long long seed = -1;
    double tol = -1.0;
    bool has_n = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--input", o.input, "input document (JSON file)");
    cmd->add_option("--output", o.output, "output file (default stdout)");
    cmd->add_option("--n", o.n, "ambient dimension")->check(CLI::Range(2, 64));
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--tol", o.tol, "tolerance");
    cmd->add_option("--words", o.words, "maximum word length L");
    cmd->add_option("--steps", o.steps, "sequence length K");
    if (with_format)
        cmd->add_option("--format", o.format, "csv or table")
            ->check(CLI::IsMember({"csv", "table"}));
}

bv::InputDocument load_input(const CommonOpts& o, bool required) {
    bv::InputDocument doc;
    if (o.input.empty()) {
        if (required) throw bv::document_error("--input is required");
    } else {
        std::ifstream in(o.input);
        if (!in) throw bv::document_error("cannot open input file: " + o.input);
        std::stringstream ss;
        ss << in.rdbuf();
        doc = bv::parse_input_text(ss.str());
    }
    if (o.n > 0) {
        doc.n = o.n;
        for (const auto& f : doc.flags)
            if (f.n() != doc.n)
                throw bv::document_error("flag size does not match --n");
    }
    if (o.seed >= 0) doc.config.seed = static_cast<std::uint64_t>(o.seed);
    if (o.tol > 0) doc.config.tol = o.tol;
    if (o.words >= 0) doc.config.L = o.words;
    if (o.steps >= 0) doc.config.K = o.steps;
    return doc;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw bv::document_error("cannot open output file: " + o.output);
    out << text;
}

std::string point_csv(const bv::ProjectivePoint& p) {
    if (p.is_infinity()) return "inf,0";
    const bv::cplx z = p.value();
    return bv::format_double(z.real()) + "," + bv::format_double(z.imag());
}

// Rows of already-formatted cells; table mode pads columns to equal width.
std::string render_rows(const std::vector<std::vector<std::string>>& rows,
                        const std::string& format) {
    std::string out;
    if (format == "csv") {
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) {
                if (i) out += ",";
                out += r[i];
            }
            out += "\n";
        }
        return out;
    }
    std::vector<size_t> width;
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.resize(i + 1, 0);
            width[i] = std::max(width[i], r[i].size());
        }
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            if (i) out += "  ";
            out += r[i];
            if (i + 1 < r.size()) out.append(width[i] - r[i].size(), ' ');
        }
        out += "\n";
    }
    return out;
}

int cmd_volume(const CommonOpts& o) {
    const bv::InputDocument doc = load_input(o, true);
    if (doc.points.size() != 4)
        throw bv::document_error("volume needs exactly 4 points");
    const bv::TetConfig t{doc.points[0], doc.points[1], doc.points[2],
                          doc.points[3]};
    emit(o, bv::format_double(bv::ideal_volume(t)) + "\n");
    return 0;
}

int cmd_borel(const CommonOpts& o) {
    const bv::InputDocument doc = load_input(o, true);
    if (doc.flags.size() != 4)
        throw bv::document_error("borel needs exactly 4 flags");
    const bv::FlagConfig f{doc.flags[0], doc.flags[1], doc.flags[2],
                           doc.flags[3]};
    emit(o, bv::format_double(bv::borel_cocycle(f, doc.config.seed)) + "\n");
    return 0;
}

int cmd_veronese(const CommonOpts& o) {
    const bv::InputDocument doc = load_input(o, true);
    if (doc.points.empty()) throw bv::document_error("veronese needs points");
    std::string flags;
    for (size_t i = 0; i < doc.points.size(); ++i) {
        if (i) flags += ", ";
        flags += bv::format_matrix_json(
            bv::veronese_flag(doc.points[i], doc.n).basis());
    }
    bv::JsonWriter w;
    w.int_field("n", doc.n);
    w.field("flags", "[" + flags + "]");
    emit(o, w.str() + "\n");
    return 0;
}

int cmd_orbit(const CommonOpts& o, bool with_dilation) {
    const bv::InputDocument doc = load_input(o, false);
    const int L = (o.words >= 0) ? o.words : doc.config.L;
    const auto refl = bv::base_reflections();
    std::vector<bv::ExtendedMoebius> gens(refl.begin(), refl.end());
    std::vector<std::string> labels{"r1", "r2", "r3", "r4"};
    if (with_dilation) {
        const bv::ExtendedMoebius g = bv::dilation_element(bv::base_tetrahedron());
        gens.push_back(g);
        gens.push_back(g.inverse());
        labels.push_back("g");
        labels.push_back("G");
    }
    const auto cells = bv::enumerate_orbit(gens, L);
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"word", "length", "z0_re", "z0_im", "z1_re", "z1_im",
                    "z2_re", "z2_im", "z3_re", "z3_im", "volume", "sign"});
    for (const auto& c : cells) {
        std::vector<std::string> row;
        row.push_back(bv::word_string(c.word, labels));
        row.push_back(std::to_string(c.word.length()));
        std::string verts;
        for (int i = 0; i < 4; ++i) {
            const std::string pc = point_csv(c.vertices[i]);
            const size_t comma = pc.find(',');
            row.push_back(pc.substr(0, comma));
            row.push_back(pc.substr(comma + 1));
        }
        row.push_back(bv::format_double(bv::ideal_volume(c.vertices)));
        row.push_back(c.word.element.antiholomorphic ? "-1" : "1");
        rows.push_back(std::move(row));
    }
    emit(o, render_rows(rows, o.format));
    return 0;
}

int cmd_maximize(const CommonOpts& o, long long budget) {
    const bv::InputDocument doc = load_input(o, false);
    const int n = (o.n > 0) ? o.n : doc.n;
    if (budget <= 0) budget = (n <= 2) ? 20000 : 100000;
    bv::FlagConfig warm;
    const bool has_warm = doc.flags.size() == 4;
    if (has_warm) warm = {doc.flags[0], doc.flags[1], doc.flags[2], doc.flags[3]};
    const bv::MaximizeReport rep = bv::maximize_borel(
        n, budget, doc.config.seed, 8, has_warm ? &warm : nullptr);

    bv::JsonWriter w;
    w.int_field("n", n);
    w.number_field("value", rep.value);
    w.number_field("bound", bv::borel_bound(n));
    w.number_field("defect", rep.defect);
    w.int_field("evals", rep.evals);
    try {
        const bv::RecoveredNormalizer rec =
            bv::recover_normalizer(rep.flags, std::max(rep.defect * 2.0, 1e-8));
        w.int_field("tetra_sign", rec.sign);
        w.number_field("residual", rec.residual);
    } catch (const std::exception& e) {
        w.text_field("recovery_error", e.what());
    }
    std::string flags;
    for (int i = 0; i < 4; ++i) {
        if (i) flags += ", ";
        flags += bv::format_matrix_json(rep.flags[i].orthonormalized().basis());
    }
    w.field("flags", "[" + flags + "]");
    emit(o, w.str() + "\n");
    return 0;
}

int cmd_propagate(const CommonOpts& o) {
    const bv::InputDocument doc = load_input(o, false);
    const int n = (o.n > 0) ? o.n : doc.n;
    const bv::RunConfig& c = doc.config;
    const bv::Mat drift = bv::make_drift(n, c.drift, c.seed);
    const bv::SyntheticRun run =
        bv::synthesize_sequence(n, c.K, c.L, drift, c.eps_schedule, c.seed);
    const auto report = bv::propagate_and_recover(run, c.tol);
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"k", "eps", "defect", "prop_dist", "rep_dist", "delta_dist",
                    "status"});
    for (const auto& r : report)
        rows.push_back({std::to_string(r.k), bv::format_double(r.eps),
                        bv::format_double(r.defect), bv::format_double(r.prop_dist),
                        bv::format_double(r.rep_dist),
                        bv::format_double(r.delta_dist), r.status});
    emit(o, render_rows(rows, o.format));
    return 0;
}

int cmd_partition(const CommonOpts& o) {
    const bv::InputDocument doc = load_input(o, false);
    const int n = (o.n > 0) ? o.n : doc.n;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"partition", "parts_value", "full_value", "relation"});
    for (const auto& parts : bv::partitions_of(n)) {
        const bv::PartitionBound b = bv::partition_bound(n, parts);
        std::string name;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) name += "+";
            name += std::to_string(parts[i]);
        }
        rows.push_back({name, std::to_string(b.parts_int),
                        std::to_string(b.full_int),
                        b.strict ? "strict" : "equality"});
    }
    emit(o, render_rows(rows, o.format));
    return 0;
}

int cmd_selftest(const CommonOpts& o) {
    const std::uint64_t seed =
        (o.seed >= 0) ? static_cast<std::uint64_t>(o.seed) : 20240817u;
    const auto results = bv::run_selftest(seed);
    std::string out;
    bool ok = true;
    for (const auto& r : results) {
        out += (r.pass ? "ok   " : "FAIL ");
        out += r.name + "  deviation " + bv::format_double(r.deviation) +
               "  tolerance " + bv::format_double(r.tolerance) + "\n";
        ok = ok && r.pass;
    }
    out += ok ? "selftest passed\n" : "selftest FAILED\n";
    emit(o, out);
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flag cocycle and rigidity experiment tool"};
    app.require_subcommand(1);

    CommonOpts o;
    bool with_dilation = false;
    long long budget = 0;

    auto* volume = app.add_subcommand("volume", "ideal tetrahedron volume of 4 points");
    add_common(volume, o, false);
    auto* borel = app.add_subcommand("borel", "cocycle value on 4 flags");
    add_common(borel, o, false);
    auto* veronese = app.add_subcommand("veronese", "Veronese flags of points");
    add_common(veronese, o, false);
    auto* orbit = app.add_subcommand("orbit", "reflection orbit of the base tetrahedron");
    add_common(orbit, o);
    orbit->add_flag("--dilation", with_dilation, "include the dilation generator");
    auto* maximize = app.add_subcommand("maximize", "maximize |cocycle| over flags");
    add_common(maximize, o, false);
    maximize->add_option("--budget", budget, "objective evaluation budget");
    auto* propagate = app.add_subcommand("propagate", "synthetic sequence recovery run");
    add_common(propagate, o);
    auto* partition = app.add_subcommand("partition-check", "partition bound table");
    add_common(partition, o);
    auto* selftest = app.add_subcommand("selftest", "run internal consistency checks");
    add_common(selftest, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}" << std::endl;
        return 2;
    }

    try {
        if (volume->parsed()) return cmd_volume(o);
        if (borel->parsed()) return cmd_borel(o);
        if (veronese->parsed()) return cmd_veronese(o);
        if (orbit->parsed()) return cmd_orbit(o, with_dilation);
        if (maximize->parsed()) return cmd_maximize(o, budget);
        if (propagate->parsed()) return cmd_propagate(o);
        if (partition->parsed()) return cmd_partition(o);
        if (selftest->parsed()) return cmd_selftest(o);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (auto& ch : msg)
            if (ch == '"' || ch == '\n') ch = '\'';
        std::cerr << "{\"error\": \"" << msg << "\"}" << std::endl;
        return 1;
    }
    std::cerr << "{\"error\": \"no subcommand\"}" << std::endl;
    return 2;
}
