#include "octoport/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace octoport::cli {

std::string kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::g_statistics: return "g_statistics";
        case ExperimentKind::lemma1_check: return "lemma1_check";
        case ExperimentKind::lemma2_check: return "lemma2_check";
        case ExperimentKind::convergence_sweep: return "convergence_sweep";
        case ExperimentKind::husimi_map: return "husimi_map";
    }
    return "unknown";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_int(const std::string& s, int& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RawSection {
    std::vector<std::vector<double>> rows;
};

// value syntax: vacuum | fock <n> | coherent <re> [im] | thermal <nbar> |
// explicit (matrix given in the section)
bool parse_state(const std::string& key, const std::string& value,
                 const RawSection* section, eightport::StateSpec& out,
                 std::vector<std::string>& errors) {
    auto toks = tokens(value);
    if (toks.empty()) {
        errors.push_back(key + ": empty state spec");
        return false;
    }
    const std::string& name = toks[0];
    if (name == "vacuum") {
        if (toks.size() != 1) {
            errors.push_back(key + ": vacuum takes no arguments");
            return false;
        }
        out = eightport::StateSpec::make_vacuum();
        return true;
    }
    if (name == "fock") {
        int n;
        if (toks.size() != 2 || !parse_int(toks[1], n) || n < 0) {
            errors.push_back(key + ": fock needs one non-negative level");
            return false;
        }
        out = eightport::StateSpec::make_fock(n);
        return true;
    }
    if (name == "coherent") {
        double re, im = 0.0;
        bool ok = toks.size() == 2 || toks.size() == 3;
        ok = ok && parse_double(toks[1], re);
        if (ok && toks.size() == 3) ok = parse_double(toks[2], im);
        if (!ok) {
            errors.push_back(key + ": coherent needs amplitude re [im]");
            return false;
        }
        out = eightport::StateSpec::make_coherent(Complex(re, im));
        return true;
    }
    if (name == "thermal") {
        double nbar;
        if (toks.size() != 2 || !parse_double(toks[1], nbar) || nbar < 0) {
            errors.push_back(key + ": thermal needs one occupation >= 0");
            return false;
        }
        out = eightport::StateSpec::make_thermal(nbar);
        return true;
    }
    if (name == "explicit") {
        if (!section || section->rows.empty()) {
            errors.push_back(key + ": explicit state needs a [" + key +
                             ".matrix] section");
            return false;
        }
        const size_t dim = section->rows.size();
        Matrix m(dim, dim);
        for (size_t i = 0; i < dim; ++i) {
            if (section->rows[i].size() != 2 * dim) {
                errors.push_back(key + ".matrix: row " + std::to_string(i) +
                                 " needs " + std::to_string(2 * dim) +
                                 " numbers (re/im pairs)");
                return false;
            }
            for (size_t j = 0; j < dim; ++j)
                m(i, j) = Complex(section->rows[i][2 * j],
                                  section->rows[i][2 * j + 1]);
        }
        try {
            out = eightport::StateSpec::make_explicit(std::move(m));
        } catch (const std::exception& ex) {
            errors.push_back(key + ".matrix: " + ex.what());
            return false;
        }
        return true;
    }
    errors.push_back(key + ": unknown state family '" + name + "'");
    return false;
}

}  // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult result;
    std::vector<std::string>& errors = result.errors;

    std::map<std::string, std::string> kv;
    std::map<std::string, RawSection> sections;
    std::string current_section;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) +
                                 ": malformed section header");
                continue;
            }
            current_section = trim(line.substr(1, line.size() - 2));
            sections[current_section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) +
                             ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!current_section.empty()) {
            if (key != "row") {
                errors.push_back("line " + std::to_string(lineno) +
                                 ": sections only take 'row' entries");
                continue;
            }
            std::vector<double> row;
            for (const auto& t : tokens(value)) {
                double v;
                if (!parse_double(t, v)) {
                    errors.push_back("line " + std::to_string(lineno) +
                                     ": bad number '" + t + "'");
                    row.clear();
                    break;
                }
                row.push_back(v);
            }
            if (!row.empty()) sections[current_section].rows.push_back(row);
            continue;
        }
        if (kv.count(key))
            errors.push_back("duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const std::map<std::string, ExperimentKind> kinds = {
        {"g_statistics", ExperimentKind::g_statistics},
        {"lemma1_check", ExperimentKind::lemma1_check},
        {"lemma2_check", ExperimentKind::lemma2_check},
        {"convergence_sweep", ExperimentKind::convergence_sweep},
        {"husimi_map", ExperimentKind::husimi_map},
    };

    ExperimentConfig cfg;
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("kind")) {
        auto it = kinds.find(*v);
        if (it == kinds.end())
            errors.push_back("kind: unknown experiment '" + *v + "'");
        else
            cfg.kind = it->second;
    } else {
        errors.push_back("kind: required key missing");
    }

    if (auto v = take("T")) {
        auto sec = sections.find("T.matrix");
        parse_state("T", *v, sec == sections.end() ? nullptr : &sec->second,
                    cfg.t_state, errors);
    }
    if (auto v = take("S")) {
        auto sec = sections.find("S.matrix");
        parse_state("S", *v, sec == sections.end() ? nullptr : &sec->second,
                    cfg.s_state, errors);
    }

    if (auto v = take("z")) {
        auto toks = tokens(*v);
        double re = 0, im = 0;
        bool ok = (toks.size() == 1 || toks.size() == 2) &&
                  parse_double(toks[0], re);
        if (ok && toks.size() == 2) ok = parse_double(toks[1], im);
        if (!ok)
            errors.push_back("z: needs re [im]");
        else
            cfg.z = Complex(re, im);
    }
    if (auto v = take("phi")) {
        if (!parse_double(*v, cfg.phi)) errors.push_back("phi: bad number");
    }
    if (auto v = take("radii")) {
        cfg.radii.clear();
        for (const auto& t : tokens(*v)) {
            double r;
            if (!parse_double(t, r)) {
                errors.push_back("radii: bad number '" + t + "'");
                break;
            }
            cfg.radii.push_back(r);
        }
    }
    if (auto v = take("window")) {
        if (!parse_double(*v, cfg.window) || !(cfg.window > 0))
            errors.push_back("window: needs a positive number");
    }
    if (auto v = take("grid")) {
        auto toks = tokens(*v);
        bool ok = toks.size() == 2 && parse_int(toks[0], cfg.grid_nx) &&
                  parse_int(toks[1], cfg.grid_ny);
        if (!ok || cfg.grid_nx < 1 || cfg.grid_ny < 1)
            errors.push_back("grid: needs two positive integers");
    }
    if (auto v = take("rect")) {
        auto toks = tokens(*v);
        double a, b, c, d;
        bool ok = toks.size() == 4 && parse_double(toks[0], a) &&
                  parse_double(toks[1], b) && parse_double(toks[2], c) &&
                  parse_double(toks[3], d);
        if (!ok || !(a < b) || !(c < d))
            errors.push_back("rect: needs qmin qmax pmin pmax with min < max");
        else
            cfg.lemma_rect = Rectangle{a, b, c, d};
    }
    auto take_dim = [&](const std::string& key, int& dst) {
        if (auto v = take(key)) {
            if (!parse_int(*v, dst) || dst < 0 || dst == 1)
                errors.push_back(key + ": needs 0 (auto) or an integer >= 2");
        }
    };
    take_dim("dim1", cfg.dim1);
    take_dim("dim2", cfg.dim2);
    take_dim("dim3", cfg.dim3);
    take_dim("dim4", cfg.dim4);
    if (auto v = take("path")) {
        if (*v != "direct" && *v != "factorized")
            errors.push_back("path: must be 'direct' or 'factorized'");
        else
            cfg.path = *v;
    }
    if (auto v = take("out_prefix")) {
        if (v->empty())
            errors.push_back("out_prefix: must be non-empty");
        else
            cfg.out_prefix = *v;
    }

    for (const auto& [key, value] : kv)
        errors.push_back("unknown key '" + key + "'");
    for (const auto& [name, sec] : sections)
        if (name != "T.matrix" && name != "S.matrix")
            errors.push_back("unknown section '" + name + "'");

    // kind-specific requirements
    if (cfg.kind == ExperimentKind::convergence_sweep) {
        if (cfg.radii.empty()) errors.push_back("radii: required for sweeps");
        for (size_t i = 0; i < cfg.radii.size(); ++i) {
            if (!(cfg.radii[i] > 0))
                errors.push_back("radii: must be positive");
            else if (i > 0 && !(cfg.radii[i] > cfg.radii[i - 1]))
                errors.push_back("radii: must be strictly increasing");
        }
    }
    if (cfg.kind != ExperimentKind::convergence_sweep &&
        cfg.kind != ExperimentKind::husimi_map && std::abs(cfg.z) <= 0.0)
        errors.push_back("z: must be nonzero");

    if (errors.empty()) result.config = cfg;
    return result;
}

namespace {

std::string state_text(const eightport::StateSpec& s) {
    using Kind = eightport::StateSpec::Kind;
    switch (s.kind) {
        case Kind::vacuum: return "vacuum";
        case Kind::fock: return "fock " + std::to_string(s.fock_n);
        case Kind::coherent:
            return "coherent " + fmt(s.alpha.real()) + " " +
                   fmt(s.alpha.imag());
        case Kind::thermal: return "thermal " + fmt(s.nbar);
        case Kind::explicit_matrix: return "explicit";
    }
    return "vacuum";
}

void append_matrix_section(std::string& out, const std::string& name,
                           const Matrix& m) {
    out += "[" + name + ".matrix]\n";
    for (long i = 0; i < m.rows(); ++i) {
        out += "row =";
        for (long j = 0; j < m.cols(); ++j) {
            out += " " + fmt(m(i, j).real()) + " " + fmt(m(i, j).imag());
        }
        out += "\n";
    }
}

}  // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    out += "kind = " + kind_name(cfg.kind) + "\n";
    out += "T = " + state_text(cfg.t_state) + "\n";
    out += "S = " + state_text(cfg.s_state) + "\n";
    out += "z = " + fmt(cfg.z.real()) + " " + fmt(cfg.z.imag()) + "\n";
    out += "phi = " + fmt(cfg.phi) + "\n";
    out += "radii =";
    for (double r : cfg.radii) out += " " + fmt(r);
    out += "\n";
    out += "window = " + fmt(cfg.window) + "\n";
    out += "grid = " + std::to_string(cfg.grid_nx) + " " +
           std::to_string(cfg.grid_ny) + "\n";
    out += "rect = " + fmt(cfg.lemma_rect.qlo) + " " + fmt(cfg.lemma_rect.qhi) +
           " " + fmt(cfg.lemma_rect.plo) + " " + fmt(cfg.lemma_rect.phi) + "\n";
    out += "dim1 = " + std::to_string(cfg.dim1) + "\n";
    out += "dim2 = " + std::to_string(cfg.dim2) + "\n";
    out += "dim3 = " + std::to_string(cfg.dim3) + "\n";
    out += "dim4 = " + std::to_string(cfg.dim4) + "\n";
    out += "path = " + cfg.path + "\n";
    out += "out_prefix = " + cfg.out_prefix + "\n";
    if (cfg.t_state.kind == eightport::StateSpec::Kind::explicit_matrix)
        append_matrix_section(out, "T", cfg.t_state.matrix);
    if (cfg.s_state.kind == eightport::StateSpec::Kind::explicit_matrix)
        append_matrix_section(out, "S", cfg.s_state.matrix);
    return out;
}

}  // namespace octoport::cli
