// Command-line surface: Q-datum validation, table emission, and one-shot
// verification sweeps. JSON is the canonical machine format, CSV is offered
// for tables, text for eyeballs. Exit codes: 0 ok/valid/pass, 1 invalid or
// failed checks, 2 malformed input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcombinat/kostant.hpp"
#include "qcombinat/lweight.hpp"
#include "qcombinat/qcartan.hpp"
#include "qcombinat/qdatum.hpp"
#include "qcombinat/verify.hpp"

using json = nlohmann::ordered_json;
using namespace qcombinat;

namespace {

struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::vector<int>> parse_cycles(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    if (text.empty() || text == "id") return cycles;
    size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] != '(') ++pos;
        if (pos == text.size()) break;
        size_t close = text.find(')', pos);
        if (close == std::string::npos) throw MalformedInput("unbalanced parenthesis in --sigma");
        std::string body = text.substr(pos + 1, close - pos - 1);
        for (auto& ch : body)
            if (ch == ',') ch = ' ';
        std::istringstream is(body);
        std::vector<int> cyc;
        int v;
        while (is >> v) cyc.push_back(v);
        if (cyc.size() < 2) throw MalformedInput("cycle with fewer than two vertices in --sigma");
        cycles.push_back(cyc);
        pos = close + 1;
    }
    return cycles;
}

IntVec parse_int_list(const std::string& text) {
    IntVec out;
    std::string body = text;
    for (auto& ch : body)
        if (ch == ',') ch = ' ';
    std::istringstream is(body);
    Int v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) throw MalformedInput("could not parse integer list: " + text);
    return out;
}

struct DatumSpec {
    std::string type;
    std::string sigma;
    std::string xi;
    std::string file;
};

QDatum load_datum(const DatumSpec& spec) {
    std::string type = spec.type;
    std::vector<std::vector<int>> cycles;
    IntVec xi;
    if (!spec.file.empty()) {
        std::ifstream in(spec.file);
        if (!in) throw MalformedInput("cannot open datum file " + spec.file);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw MalformedInput(std::string("bad JSON: ") + e.what());
        }
        if (!j.contains("type") || !j.contains("xi")) throw MalformedInput("datum needs type and xi");
        type = j["type"].get<std::string>();
        if (j.contains("rank")) type += std::to_string(j["rank"].get<int>());
        if (j.contains("sigma"))
            for (auto& cyc : j["sigma"]) cycles.push_back(cyc.get<std::vector<int>>());
        xi = j["xi"].get<IntVec>();
    } else {
        if (type.empty()) throw MalformedInput("--type is required");
        cycles = parse_cycles(spec.sigma);
        xi = parse_int_list(spec.xi);
    }
    TypeLabel label;
    try {
        label = TypeLabel::parse(type);
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
    }
    CartanData cartan = CartanData::finite(label);
    if (static_cast<int>(xi.size()) != cartan.n)
        throw MalformedInput("xi has " + std::to_string(xi.size()) + " entries, type " + type +
                             " needs " + std::to_string(cartan.n));
    try {
        DiagramAutomorphism sigma = cycles.empty() ? DiagramAutomorphism::identity(cartan.n)
                                                   : DiagramAutomorphism::from_cycles(cartan.n, cycles);
        return QDatum(std::move(cartan), std::move(sigma), std::move(xi));
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
    }
}

json root_json(const Root& r) { return json(r.rc); }

int cmd_validate(const DatumSpec& spec, const std::string& format) {
    const QDatum q = load_datum(spec);
    const auto viols = q.validate();
    if (format == "text") {
        if (viols.empty()) {
            std::cout << "valid\n";
        } else {
            for (auto& v : viols) std::cout << v.axiom << ": " << v.detail << "\n";
        }
    } else {
        json out = json::array();
        for (auto& v : viols)
            out.push_back({{"axiom", v.axiom}, {"vertices", v.vertices}, {"detail", v.detail}});
        std::cout << json({{"valid", viols.empty()}, {"violations", out}}).dump(2) << "\n";
    }
    return viols.empty() ? 0 : 1;
}

int cmd_table(const DatumSpec& spec, const std::string& format) {
    const QDatum q = load_datum(spec);
    if (!q.is_valid()) {
        std::cerr << "datum is not valid; run `validate` for details\n";
        return 1;
    }
    const ConvexOrder o = ConvexOrder::adapted(q);
    if (format == "csv") {
        std::cout << "k,root,vertex,p\n";
        for (size_t k = 0; k < o.length(); ++k) {
            std::cout << k + 1 << ",\"";
            for (size_t c = 0; c < o.beta[k].rc.size(); ++c)
                std::cout << (c ? " " : "") << o.beta[k].rc[c];
            std::cout << "\"," << o.word[k] << "," << o.p[k] << "\n";
        }
    } else if (format == "text") {
        for (size_t k = 0; k < o.length(); ++k) {
            std::cout << "beta_" << k + 1 << " = (";
            for (size_t c = 0; c < o.beta[k].rc.size(); ++c)
                std::cout << (c ? "," : "") << o.beta[k].rc[c];
            std::cout << ") -> (" << o.word[k] << ", " << o.p[k] << ")\n";
        }
    } else {
        json rows = json::array();
        for (size_t k = 0; k < o.length(); ++k)
            rows.push_back({{"root", root_json(o.beta[k])}, {"vertex", o.word[k]}, {"p", o.p[k]}});
        json out = {{"word", o.word}, {"rows", rows}};
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_inverse_cartan(const std::string& type, Int cutoff, const std::string& format) {
    TypeLabel label;
    try {
        label = TypeLabel::parse(type);
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
    }
    const auto qc = QuantumCartan::build(label);
    const auto s = InverseSeries::invert(qc, cutoff);
    if (format == "csv") {
        std::cout << "i,j,u,coeff\n";
        for (int i = 1; i <= qc.g0.n; ++i)
            for (int j = 1; j <= qc.g0.n; ++j)
                for (Int u = 1; u <= cutoff; ++u)
                    if (s.at(i, j, u) != 0)
                        std::cout << i << "," << j << "," << u << "," << s.at(i, j, u) << "\n";
    } else if (format == "text") {
        for (int i = 1; i <= qc.g0.n; ++i)
            for (int j = 1; j <= qc.g0.n; ++j) {
                std::cout << "a~_" << i << j << ":";
                for (Int u = 1; u <= cutoff; ++u)
                    if (s.at(i, j, u) != 0) std::cout << " " << u << ":" << s.at(i, j, u);
                std::cout << "\n";
            }
    } else {
        json rows = json::array();
        for (int i = 1; i <= qc.g0.n; ++i)
            for (int j = 1; j <= qc.g0.n; ++j)
                for (Int u = 1; u <= cutoff; ++u)
                    if (s.at(i, j, u) != 0)
                        rows.push_back({{"i", i}, {"j", j}, {"u", u}, {"coeff", s.at(i, j, u)}});
        std::cout << json({{"type", label.str()}, {"cutoff", cutoff}, {"rows", rows}}).dump(2)
                  << "\n";
    }
    return 0;
}

json lweight_json(const LWeight& w) {
    json arr = json::array();
    for (auto& [k, v] : w.c) {
        json row;
        row["i"] = k.node;
        if (k.a.r == 1)
            row["p"] = k.a.m;
        else
            row["p"] = json::array({k.a.m, k.a.zeta});
        row["coeff"] = v;
        arr.push_back(row);
    }
    return arr;
}

int cmd_kp(const DatumSpec& spec, const std::string& beta_text, const std::string& format) {
    const QDatum q = load_datum(spec);
    if (!q.is_valid()) {
        std::cerr << "datum is not valid; run `validate` for details\n";
        return 1;
    }
    const IntVec bc = parse_int_list(beta_text);
    if (static_cast<int>(bc.size()) != q.rank()) throw MalformedInput("--beta has wrong arity");
    const Root beta(bc);
    const ConvexOrder o = ConvexOrder::adapted(q);
    const auto kps = enumerate_kp(o, beta);
    std::vector<IntVec> rhos;
    rhos.reserve(kps.size());
    for (auto& m : kps) rhos.push_back(rho(o, m));
    // cover relations of the rho-order
    std::vector<std::pair<size_t, size_t>> hasse;
    auto le = [&](size_t x, size_t y) {
        for (size_t k = 0; k < rhos[x].size(); ++k)
            if (rhos[x][k] > rhos[y][k]) return false;
        return true;
    };
    for (size_t x = 0; x < kps.size(); ++x)
        for (size_t y = 0; y < kps.size(); ++y) {
            if (x == y || !le(x, y)) continue;
            bool covered = true;
            for (size_t z = 0; z < kps.size() && covered; ++z)
                if (z != x && z != y && le(x, z) && le(z, y)) covered = false;
            if (covered) hasse.emplace_back(x, y);
        }
    if (format == "csv") {
        std::cout << "index,m,rho\n";
        for (size_t x = 0; x < kps.size(); ++x) {
            std::cout << x << ",\"";
            for (size_t k = 0; k < kps[x].size(); ++k) std::cout << (k ? " " : "") << kps[x][k];
            std::cout << "\",\"";
            for (size_t k = 0; k < rhos[x].size(); ++k) std::cout << (k ? " " : "") << rhos[x][k];
            std::cout << "\"\n";
        }
    } else if (format == "text") {
        for (size_t x = 0; x < kps.size(); ++x) {
            std::cout << "m_" << x << " = (";
            for (size_t k = 0; k < kps[x].size(); ++k) std::cout << (k ? "," : "") << kps[x][k];
            std::cout << "), rho = (";
            for (size_t k = 0; k < rhos[x].size(); ++k) std::cout << (k ? "," : "") << rhos[x][k];
            std::cout << ")\n";
        }
        for (auto& [x, y] : hasse) std::cout << "cover: " << x << " < " << y << "\n";
    } else {
        json parts = json::array();
        for (size_t x = 0; x < kps.size(); ++x)
            parts.push_back(
                {{"m", kps[x]}, {"rho", rhos[x]}, {"pi", lweight_json(omega_q(o, kps[x]))}});
        json edges = json::array();
        for (auto& [x, y] : hasse) edges.push_back({x, y});
        std::cout << json({{"beta", bc}, {"partitions", parts}, {"hasse", edges}}).dump(2) << "\n";
    }
    return 0;
}

int cmd_blocks(const DatumSpec& spec, const std::string& weights_file, const std::string& format) {
    const QDatum q = load_datum(spec);
    if (!q.is_valid()) {
        std::cerr << "datum is not valid; run `validate` for details\n";
        return 1;
    }
    std::ifstream in(weights_file);
    if (!in) throw MalformedInput("cannot open weights file " + weights_file);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("bad JSON: ") + e.what());
    }
    std::vector<LWeight> pis;
    for (auto& entry : j) {
        LWeight w;
        for (auto& row : entry)
            w.add({row.at("i").get<int>(), SpectralExp::untwisted(row.at("p").get<Int>())},
                  row.at("coeff").get<Int>());
        pis.push_back(std::move(w));
    }
    const ConvexOrder o = ConvexOrder::adapted(q);
    const auto blks = blocks(pis, q, o);
    if (format == "text") {
        for (auto& b : blks) {
            std::cout << "beta (";
            for (size_t c = 0; c < b.beta.rc.size(); ++c) std::cout << (c ? "," : "") << b.beta.rc[c];
            std::cout << "):";
            for (size_t m : b.members) std::cout << " " << m;
            std::cout << "\n";
        }
    } else {
        json out = json::array();
        for (auto& b : blks) out.push_back({{"beta", b.beta.rc}, {"members", b.members}});
        std::cout << json({{"blocks", out}}).dump(2) << "\n";
    }
    return 0;
}

int cmd_poset_check(const DatumSpec& spec, const std::string& beta_text, size_t budget,
                    const std::string& format) {
    const QDatum q = load_datum(spec);
    if (!q.is_valid()) {
        std::cerr << "datum is not valid; run `validate` for details\n";
        return 1;
    }
    const IntVec bc = parse_int_list(beta_text);
    if (static_cast<int>(bc.size()) != q.rank()) throw MalformedInput("--beta has wrong arity");
    const ConvexOrder o = ConvexOrder::adapted(q);
    const auto rep = poset_iso_check(q, o, Root(bc), budget);
    if (format == "json") {
        json out = {{"partitions", rep.partitions},
                    {"mismatches", rep.mismatches},
                    {"details", rep.details},
                    {"pass", rep.ok()}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (rep.ok() ? "PASS" : "FAIL") << " poset isomorphism on " << rep.partitions
                  << " partitions\n";
        for (auto& d : rep.details) std::cout << "  " << d << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int cmd_verify_all(const DatumSpec& spec, Int cutoff, Int poset_height, size_t budget,
                   std::uint64_t seed, const std::string& format) {
    const QDatum q = load_datum(spec);
    std::vector<CheckResult> results;
    bool incomplete = false;
    try {
        results = verify_all(q, cutoff, poset_height, seed, budget);
    } catch (const std::runtime_error& e) {
        incomplete = true;
        results.push_back({"budget", "verification sweep", false, e.what()});
    }
    bool all = !incomplete;
    for (auto& r : results) all = all && r.pass;
    if (format == "json") {
        json rows = json::array();
        for (auto& r : results)
            rows.push_back({{"name", r.name},
                            {"statement", r.statement},
                            {"pass", r.pass},
                            {"detail", r.detail}});
        std::cout << json({{"pass", all}, {"incomplete", incomplete}, {"checks", rows}}).dump(2)
                  << "\n";
    } else {
        for (auto& r : results) {
            const char* tag = r.pass ? "PASS" : (r.detail == "SKIPPED" ? "SKIP" : "FAIL");
            std::cout << tag << " " << r.name << " -- " << r.statement;
            if (!r.detail.empty() && r.detail != "SKIPPED") std::cout << " [" << r.detail << "]";
            std::cout << "\n";
        }
        if (incomplete) std::cout << "INCOMPLETE: budget exceeded before all suites finished\n";
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorics of Q-data, convex orders, and l-weight lattices"};
    app.require_subcommand(1);

    DatumSpec spec;
    std::string format = "json";
    std::string beta_text;
    Int cutoff = 20;
    Int poset_height = 3;
    std::uint64_t seed = 1;
    size_t budget = 200000;
    if (const char* env = std::getenv("QCOMBINAT_BUDGET")) budget = std::strtoull(env, nullptr, 10);

    auto add_datum_opts = [&](CLI::App* cmd) {
        cmd->add_option("--type", spec.type, "finite type label, e.g. A2 or D4");
        cmd->add_option("--sigma", spec.sigma, "diagram automorphism as cycles, e.g. \"(1 3)\"");
        cmd->add_option("--xi", spec.xi, "height function, comma separated");
        cmd->add_option("--datum", spec.file, "JSON file {type, rank, sigma, xi}");
        cmd->add_option("--format", format, "json|csv|text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    };

    auto* validate = app.add_subcommand("validate", "check the height-function axioms");
    add_datum_opts(validate);

    auto* table = app.add_subcommand("table", "emit the Omega~ table of an adapted word");
    add_datum_opts(table);

    auto* invc = app.add_subcommand("inverse-cartan", "emit inverse quantum Cartan coefficients");
    invc->add_option("--type", spec.type, "finite type of g0, e.g. B2")->required();
    invc->add_option("--cutoff", cutoff, "series window");
    invc->add_option("--format", format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    auto* kp = app.add_subcommand("kp", "Kostant partitions, rho vectors, and Hasse edges");
    add_datum_opts(kp);
    kp->add_option("--beta", beta_text, "root-lattice element, comma separated")->required();

    std::string weights_file;
    auto* blk = app.add_subcommand("blocks", "group l-dominant weights by root-lattice weight");
    add_datum_opts(blk);
    blk->add_option("--weights", weights_file, "JSON file: array of l-weights, each [{i,p,coeff}]")
        ->required();

    auto* pc = app.add_subcommand("poset-check", "partition order vs l-weight order");
    add_datum_opts(pc);
    pc->add_option("--beta", beta_text, "root-lattice element, comma separated")->required();
    pc->add_option("--budget", budget, "max partitions to enumerate");

    auto* va = app.add_subcommand("verify-all", "run every verification suite on a datum");
    add_datum_opts(va);
    va->add_option("--cutoff", cutoff, "inverse-series window (0 = automatic)");
    va->add_option("--poset-height", poset_height, "max |beta| for the poset sweep");
    va->add_option("--seed", seed, "seed for randomized sweeps");
    va->add_option("--budget", budget, "enumeration budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(spec, format);
        if (app.got_subcommand(table)) return cmd_table(spec, format);
        if (app.got_subcommand(invc)) return cmd_inverse_cartan(spec.type, cutoff, format);
        if (app.got_subcommand(kp)) return cmd_kp(spec, beta_text, format);
        if (app.got_subcommand(blk)) return cmd_blocks(spec, weights_file, format);
        if (app.got_subcommand(pc)) return cmd_poset_check(spec, beta_text, budget, format);
        if (app.got_subcommand(va))
            return cmd_verify_all(spec, va->count("--cutoff") ? cutoff : 0, poset_height, budget,
                                  seed, format);
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
