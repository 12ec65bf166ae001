#include "jetvar/model.hpp"

#include "jetvar/errors.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace jetvar {

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

struct IniEntry {
    std::string key;
    std::string value;
    std::size_t line;
};

struct IniSection {
    std::string name;
    std::size_t line = 0;
    std::vector<IniEntry> entries;

    const std::string* get(const std::string& key) const {
        for (const auto& e : entries)
            if (e.key == key) return &e.value;
        return nullptr;
    }
};

std::vector<IniSection> parse_ini(const std::string& text) {
    std::vector<IniSection> sections;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", lineno);
            sections.push_back({trim(line.substr(1, line.size() - 2)), lineno, {}});
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
        if (sections.empty()) throw ParseError("entry before any [section]", lineno);
        sections.back().entries.push_back(
            {trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno});
    }
    return sections;
}

[[noreturn]] void fail_line(const std::string& msg, std::size_t line) {
    throw ParseError(msg + " (line " + std::to_string(line) + ")", line);
}

Expr parse_checked(const BundleSpec& spec, const std::string& src, std::size_t line) {
    try {
        return spec.parse(src);
    } catch (const ParseError& e) {
        fail_line(std::string(e.what()) + " in '" + src + "'", line);
    }
}

} // namespace

Model Model::parse(const std::string& text, const std::string& source_name) {
    Model model;
    model.source_name = source_name;
    model.digest = fnv1a64_hex(text);

    auto sections = parse_ini(text);

    const IniSection* bundle_sec = nullptr;
    const IniSection* atoms_sec = nullptr;
    const IniSection* lagr_sec = nullptr;
    std::vector<const IniSection*> symmetry_secs;
    for (const auto& sec : sections) {
        if (sec.name == "bundle")
            bundle_sec = &sec;
        else if (sec.name == "atoms")
            atoms_sec = &sec;
        else if (sec.name == "lagrangian")
            lagr_sec = &sec;
        else if (sec.name.rfind("symmetry.", 0) == 0)
            symmetry_secs.push_back(&sec);
        else
            fail_line("unknown section [" + sec.name + "]", sec.line);
    }
    if (!bundle_sec) throw ParseError("missing [bundle] section", 0);
    if (!lagr_sec) throw ParseError("missing [lagrangian] section", 0);

    const std::string* base = bundle_sec->get("base");
    const std::string* fields = bundle_sec->get("fields");
    if (!base) fail_line("missing 'base' in [bundle]", bundle_sec->line);
    if (!fields) fail_line("missing 'fields' in [bundle]", bundle_sec->line);

    // atoms: <name>.doc, <name>.rule.<var>
    std::vector<AtomDecl> atoms;
    std::map<std::string, std::size_t> atom_at;
    if (atoms_sec) {
        for (const auto& entry : atoms_sec->entries) {
            std::size_t dot = entry.key.find('.');
            if (dot == std::string::npos)
                fail_line("atom entries look like '<name>.doc' or '<name>.rule.<var>'", entry.line);
            std::string name = entry.key.substr(0, dot);
            std::string rest = entry.key.substr(dot + 1);
            if (!atom_at.count(name)) {
                atom_at[name] = atoms.size();
                atoms.push_back({name, "", {}});
            }
            AtomDecl& decl = atoms[atom_at[name]];
            if (rest == "doc") {
                decl.doc = entry.value;
            } else if (rest.rfind("rule.", 0) == 0) {
                decl.rules.push_back({rest.substr(5), entry.value});
            } else {
                fail_line("unknown atom entry '" + rest + "'", entry.line);
            }
        }
    }

    BaseSpec base_spec{split_list(*base)};
    try {
        model.bundle = BundleSpec::create(base_spec, split_list(*fields), std::move(atoms));
    } catch (const ParseError& e) {
        throw ParseError(std::string("in atom rules: ") + e.what(), bundle_sec->line);
    } catch (const Error& e) {
        fail_line(e.what(), bundle_sec->line);
    }
    const BundleSpec* spec = model.bundle.get();

    const std::string* density = lagr_sec->get("density");
    if (!density) fail_line("missing 'density' in [lagrangian]", lagr_sec->line);
    std::size_t density_line = lagr_sec->entries.empty() ? lagr_sec->line : lagr_sec->entries[0].line;
    model.lagrangian = Lagrangian(spec, parse_checked(*spec, *density, density_line));

    const int n = spec->base_dim();
    const int m = spec->field_count();
    for (const IniSection* sec : symmetry_secs) {
        SymmetryDecl decl;
        decl.name = sec->name.substr(std::string("symmetry.").size());
        if (decl.name.empty()) fail_line("empty symmetry name", sec->line);
        if (model.find_symmetry(decl.name)) fail_line("duplicate symmetry '" + decl.name + "'", sec->line);
        decl.xi.assign(static_cast<std::size_t>(n), spec->zero());
        decl.eta.assign(static_cast<std::size_t>(m), spec->zero());
        for (const auto& entry : sec->entries) {
            std::size_t dot = entry.key.find('.');
            if (dot == std::string::npos)
                fail_line("symmetry entries look like 'xi.<coord>', 'eta.<field>', "
                          "'sigma.<coord>' or 'current.<coord>'",
                          entry.line);
            std::string kind = entry.key.substr(0, dot);
            std::string which = entry.key.substr(dot + 1);
            Expr value = parse_checked(*spec, entry.value, entry.line);
            if (kind == "xi") {
                int dir = spec->base().index_of(which);
                if (dir < 0) fail_line("unknown base coordinate '" + which + "'", entry.line);
                decl.xi[static_cast<std::size_t>(dir)] = std::move(value);
            } else if (kind == "eta") {
                int field = spec->field_index(which);
                if (field < 0) fail_line("unknown field '" + which + "'", entry.line);
                decl.eta[static_cast<std::size_t>(field)] = std::move(value);
            } else if (kind == "sigma" || kind == "current") {
                int dir = spec->base().index_of(which);
                if (dir < 0) fail_line("unknown base coordinate '" + which + "'", entry.line);
                auto& slot = kind == "sigma" ? decl.sigma : decl.current;
                if (!slot) slot = std::vector<Expr>(static_cast<std::size_t>(n), spec->zero());
                (*slot)[static_cast<std::size_t>(dir)] = std::move(value);
            } else {
                fail_line("unknown symmetry entry '" + kind + "'", entry.line);
            }
        }
        model.symmetries.push_back(std::move(decl));
    }
    return model;
}

Model Model::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    // certificates name the file, not the invocation path, so identical
    // inputs render identically from anywhere
    std::size_t slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    return parse(buf.str(), name);
}

const SymmetryDecl* Model::find_symmetry(const std::string& name) const {
    for (const auto& s : symmetries)
        if (s.name == name) return &s;
    return nullptr;
}

// ---------------------------------------------------------------------------
// certificates

std::string Certificate::text() const {
    std::string out;
    out += "command: " + command + "\n";
    if (!model.empty()) out += "model: " + model + "\n";
    if (!digest.empty()) out += "digest: fnv1a64:" + digest + "\n";
    if (!symmetry.empty()) out += "symmetry: " + symmetry + "\n";
    for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    out += "verdict: " + verdict + "\n";
    return out;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string Certificate::json() const {
    std::string out = "{";
    auto field = [&](const std::string& k, const std::string& v, bool comma = true) {
        out += "\"" + json_escape(k) + "\":\"" + json_escape(v) + "\"";
        if (comma) out += ",";
    };
    field("command", command);
    field("model", model);
    field("digest", "fnv1a64:" + digest);
    if (!symmetry.empty()) field("symmetry", symmetry);
    out += "\"entries\":{";
    for (std::size_t k = 0; k < entries.size(); ++k) {
        field(entries[k].first, entries[k].second, false);
        if (k + 1 < entries.size()) out += ",";
    }
    out += "},";
    field("verdict", verdict, false);
    out += "}";
    return out;
}

namespace {

Certificate base_certificate(const Model& model, std::string command) {
    Certificate cert;
    cert.command = std::move(command);
    cert.model = model.source_name;
    cert.digest = model.digest;
    return cert;
}

const SymmetryDecl& require_symmetry(const Model& model, const std::string& name) {
    const SymmetryDecl* decl = model.find_symmetry(name);
    if (!decl) throw Error("model declares no symmetry named '" + name + "'");
    return *decl;
}

} // namespace

Certificate cmd_el(const Model& model) {
    Certificate cert = base_certificate(model, "el");
    SourceForm delta = euler_lagrange(model.lagrangian);
    const BundleSpec* spec = model.bundle.get();
    for (int i = 0; i < spec->field_count(); ++i)
        cert.entries.emplace_back("delta[" + spec->field_name(i) + "]",
                                  delta.components[static_cast<std::size_t>(i)].str());
    cert.verdict = "computed";
    return cert;
}

Certificate cmd_symmetry(const Model& model, const std::string& name) {
    Certificate cert = base_certificate(model, "symmetry");
    cert.symmetry = name;
    const SymmetryDecl& decl = require_symmetry(model, name);
    const BundleSpec* spec = model.bundle.get();

    SymmetryReport report = characteristic_check(decl.field(spec), model.lagrangian);
    cert.entries.emplace_back("lie", report.lie_density.str());
    switch (report.kind) {
    case SymmetryKind::Exact:
        cert.verdict = "exact symmetry";
        break;
    case SymmetryKind::Divergence: {
        cert.verdict = "divergence symmetry";
        const std::vector<Expr>* sigma = nullptr;
        if (report.sigma) {
            sigma = &*report.sigma;
        } else if (decl.sigma &&
                   (total_divergence(*decl.sigma, *spec) - report.lie_density).is_zero()) {
            sigma = &*decl.sigma; // declared potential, verified exactly
        }
        if (sigma)
            for (int l = 0; l < spec->base_dim(); ++l)
                cert.entries.emplace_back("sigma[" + spec->base().coords[static_cast<std::size_t>(l)] + "]",
                                          (*sigma)[static_cast<std::size_t>(l)].str());
        else if (decl.sigma) {
            cert.entries.emplace_back("sigma", "declared components fail d_H sigma = L_v L");
            cert.verdict = "divergence symmetry, declared sigma rejected";
            cert.exit_code = 1;
        } else {
            cert.entries.emplace_back("sigma", "not constructed (unsupported fragment)");
        }
        break;
    }
    case SymmetryKind::None:
        cert.verdict = "not a symmetry";
        cert.exit_code = 1;
        for (int i = 0; i < spec->field_count(); ++i)
            cert.entries.emplace_back("residual[" + spec->field_name(i) + "]",
                                      report.residual.components[static_cast<std::size_t>(i)].str());
        break;
    }
    return cert;
}

Certificate cmd_noether(const Model& model, const std::string& name, bool check_current) {
    Certificate cert = base_certificate(model, "noether");
    cert.symmetry = name;
    const SymmetryDecl& decl = require_symmetry(model, name);
    const BundleSpec* spec = model.bundle.get();
    GeneralizedVectorField v = decl.field(spec);

    SymmetryReport report = characteristic_check(v, model.lagrangian);
    if (report.kind == SymmetryKind::None) {
        cert.verdict = "not a symmetry";
        cert.exit_code = 1;
        for (int i = 0; i < spec->field_count(); ++i)
            cert.entries.emplace_back("residual[" + spec->field_name(i) + "]",
                                      report.residual.components[static_cast<std::size_t>(i)].str());
        return cert;
    }

    NoetherCurrent J;
    if (check_current) {
        if (!decl.current) throw Error("symmetry '" + name + "' declares no current to check");
        J.components = *decl.current;
    } else {
        const std::vector<Expr>* sigma = nullptr;
        if (decl.sigma)
            sigma = &*decl.sigma;
        else if (report.sigma && report.kind == SymmetryKind::Divergence)
            sigma = &*report.sigma;
        else if (report.kind == SymmetryKind::Divergence)
            throw UnsupportedFragment("sigma is neither declared nor constructible; "
                                      "cannot assemble the current");
        J = noether_current(v, model.lagrangian, sigma);
    }

    for (int l = 0; l < spec->base_dim(); ++l)
        cert.entries.emplace_back("J[" + spec->base().coords[static_cast<std::size_t>(l)] + "]",
                                  J.components[static_cast<std::size_t>(l)].str());
    Expr residual = conservation_residual(v, model.lagrangian, J);
    cert.entries.emplace_back("residual", residual.str());
    if (residual.is_zero()) {
        cert.verdict = "conserved";
    } else {
        cert.verdict = "not conserved";
        cert.exit_code = 1;
    }
    return cert;
}

Certificate cmd_triviality(const Model& model) {
    Certificate cert = base_certificate(model, "triviality");
    const BundleSpec* spec = model.bundle.get();
    SourceForm delta = euler_lagrange(model.lagrangian);
    for (int i = 0; i < spec->field_count(); ++i)
        cert.entries.emplace_back("delta[" + spec->field_name(i) + "]",
                                  delta.components[static_cast<std::size_t>(i)].str());
    if (!delta.is_zero()) {
        cert.verdict = "not variationally trivial";
        cert.exit_code = 1;
        return cert;
    }
    try {
        std::vector<Expr> sigma = invert_total_divergence(model.lagrangian.density, *spec);
        for (int l = 0; l < spec->base_dim(); ++l)
            cert.entries.emplace_back("sigma[" + spec->base().coords[static_cast<std::size_t>(l)] + "]",
                                      sigma[static_cast<std::size_t>(l)].str());
    } catch (const UnsupportedFragment&) {
        cert.entries.emplace_back("sigma", "not constructed (unsupported fragment)");
    }
    cert.verdict = "variationally trivial";
    return cert;
}

} // namespace jetvar
