#include "seb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace seb {

using Json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kRationalKeys{"mode", "f", "b", "m", "primes"};
const std::set<std::string> kInvariantKeys{"mode", "n",   "r",   "m",     "d",   "s",      "abs_disc",
                                           "P_S",  "Q_S", "N_S_b", "H_f", "H_fstar", "multiplicities"};

std::string scalar_text(const Json& v, const std::string& key) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return v.dump();
    }
    throw InputError("field '" + key + "' must be a string or an integer");
}

const Json& field(const Json& doc, const std::string& key) {
    if (!doc.contains(key)) {
        throw InputError("missing field '" + key + "'");
    }
    return doc.at(key);
}

Rational rational_field(const Json& doc, const std::string& key) { return parse_rational(scalar_text(field(doc, key), key)); }

Integer integer_field(const Json& doc, const std::string& key) { return parse_integer(scalar_text(field(doc, key), key)); }

const Json& array_field(const Json& doc, const std::string& key) {
    const Json& v = field(doc, key);
    if (!v.is_array()) {
        throw InputError("field '" + key + "' must be a list");
    }
    return v;
}

void reject_foreign_keys(const Json& doc, const std::set<std::string>& allowed, const std::string& mode) {
    for (const auto& item : doc.items()) {
        if (allowed.count(item.key()) == 0) {
            throw InputError("field '" + item.key() + "' does not belong to " + mode + " mode");
        }
    }
}

std::string dyadic_text(const Dyadic& d) { return to_string(d.mantissa()) + "*2^" + std::to_string(d.exponent()); }

Json log_json(const LogMagnitude& l) {
    const Rendering r = render(l);
    return Json{{"upper", r.decimal}, {"digits10", r.digits10}, {"dyadic", dyadic_text(l.upper())}};
}

std::string decimal_lower(const Rational& q) {
    std::string s = decimal_upper(-q);
    if (!s.empty() && s[0] == '-') {
        return s.substr(1);
    }
    return s == "0.000000000" ? s : "-" + s;
}

Json coefficient_list(const Polynomial& f) {
    Json out = Json::array();
    for (const auto& c : f.coefficients()) {
        out.push_back(to_string(c));
    }
    return out;
}

Json instance_json(const ProblemInstance& inst) {
    Json doc;
    if (const auto* r = std::get_if<RationalInstance>(&inst)) {
        doc["mode"] = "rational";
        doc["f"] = coefficient_list(r->f);
        doc["b"] = to_string(r->b);
        doc["m"] = r->m;
        Json primes = Json::array();
        for (const auto& p : r->places.primes()) {
            primes.push_back(to_string(p));
        }
        doc["primes"] = primes;
        return doc;
    }
    const auto& v = std::get<InvariantInstance>(inst);
    doc["mode"] = "invariant";
    doc["n"] = to_string(v.n);
    doc["r"] = to_string(v.r);
    doc["m"] = to_string(v.m);
    doc["d"] = to_string(v.d);
    doc["s"] = to_string(v.s);
    doc["abs_disc"] = to_string(v.abs_disc);
    doc["P_S"] = to_string(v.P_S);
    doc["Q_S"] = to_string(v.Q_S);
    doc["N_S_b"] = to_string(v.N_S_b);
    doc["H_f"] = to_string(v.H_f);
    if (v.H_fstar) {
        doc["H_fstar"] = to_string(*v.H_fstar);
    }
    Json mult = Json::array();
    for (const auto& e : v.multiplicities) {
        mult.push_back(e.get_si());
    }
    doc["multiplicities"] = mult;
    return doc;
}

Json invariants_json(const InvariantSet& inv) {
    Json mult = Json::array();
    for (long e : inv.multiplicities) {
        mult.push_back(e);
    }
    return Json{{"n", inv.n},
                {"r", inv.r},
                {"m", inv.m},
                {"d", inv.d},
                {"s", inv.s},
                {"multiplicities", mult},
                {"abs_disc", to_string(inv.abs_disc)},
                {"P_S", to_string(inv.P_S)},
                {"Q_S", to_string(inv.Q_S)},
                {"N_S_b", to_string(inv.N_S_b)},
                {"H_f", to_string(inv.H_f)},
                {"H_fstar", to_string(inv.H_fstar)},
                {"H_fstar_derived", inv.derived_bound}};
}

Json tuple_json(const ExponentTuple& t) {
    Json out = Json::array();
    for (long v : t.values) {
        out.push_back(v);
    }
    return out;
}

Json report_json(const ProblemInstance& inst, const InvariantSet& inv, const BoundReport& rep, unsigned precision) {
    Json doc;
    doc["tool"] = "seb";
    doc["version"] = kVersion;
    doc["precision_bits"] = precision;
    doc["instance"] = instance_json(inst);
    if (inv.shape) {
        const ShapeSummary& sh = *inv.shape;
        Json mult = Json::array();
        for (long e : sh.multiplicities) {
            mult.push_back(e);
        }
        doc["shape"] = Json{{"n", sh.n},
                            {"r", sh.r},
                            {"multiplicities", mult},
                            {"f_star", coefficient_list(sh.f_star)},
                            {"H_f", to_string(sh.H_f)},
                            {"H_fstar", to_string(sh.H_fstar)},
                            {"disc_fstar", to_string(sh.disc_fstar)}};
    }
    doc["invariants"] = invariants_json(inv);
    doc["exponent_tuple"] = tuple_json(rep.tuple);
    doc["class"] = to_string(rep.cls);
    doc["ln_height_bound"] = rep.ln_height_bound ? log_json(*rep.ln_height_bound) : Json(nullptr);
    doc["ln_exponent_C"] = log_json(rep.ln_exponent_C);
    doc["ln_exponent_bound"] = log_json(rep.ln_exponent_bound);
    Json constants;
    for (const auto& [name, value] : rep.constants) {
        constants[name] = log_json(value);
    }
    doc["constants"] = constants;
    doc["voutier_floor"] = Json{{"lower", decimal_lower(rep.voutier.to_rational())}, {"dyadic", dyadic_text(rep.voutier)}};
    doc["flags"] = rep.flags;
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

unsigned checked_precision(unsigned bits) {
    if (bits < kMinPrecision || bits > 65536) {
        throw InputError("--precision must be between " + std::to_string(kMinPrecision) + " and 65536");
    }
    return bits;
}

const RationalInstance& rational_only(const ProblemInstance& inst, const std::string& command) {
    const auto* r = std::get_if<RationalInstance>(&inst);
    if (r == nullptr) {
        throw InputError(command + " requires rational mode");
    }
    return *r;
}

std::string place_text(const PlaceSet& S) {
    std::string out = "{";
    for (std::size_t i = 0; i < S.primes().size(); ++i) {
        out += (i ? ", " : "") + to_string(S.primes()[i]);
    }
    return out + "}";
}

std::string log_line(const LogMagnitude& l) {
    const Rendering r = render(l);
    return r.decimal + " (digits10 " + std::to_string(r.digits10) + ")";
}

int do_analyze(const std::string& path, bool json, unsigned precision, std::ostream& out) {
    const ProblemInstance inst = parse_problem(read_file(path));
    const InvariantSet inv = build_invariants(inst);
    const BoundReport rep = analyze(inv, precision);
    if (json) {
        out << report_json(inst, inv, rep, precision).dump(2) << "\n";
        return kExitOk;
    }
    out << "seb " << kVersion << ", precision " << precision << " bits\n";
    if (const auto* r = std::get_if<RationalInstance>(&inst)) {
        out << "equation: (" << r->f.to_string() << ") = " << to_string(r->b) << " * y^" << r->m
            << " over S = " << place_text(r->places) << "\n";
    }
    out << "n " << inv.n << ", r " << inv.r << ", m " << inv.m << ", d " << inv.d << ", s " << inv.s << "\n";
    if (inv.shape) {
        out << "f* = " << inv.shape->f_star.to_string() << ", D(f*) = " << to_string(inv.shape->disc_fstar) << "\n";
    }
    out << "H(f) = " << to_string(inv.H_f) << ", H(f*) = " << to_string(inv.H_fstar)
        << ", N_S(b) = " << to_string(inv.N_S_b) << ", P_S = " << to_string(inv.P_S)
        << ", Q_S = " << to_string(inv.Q_S) << ", |D_K| = " << to_string(inv.abs_disc) << "\n";
    out << "exponent tuple " << to_string(rep.tuple) << "\n";
    out << "class " << to_string(rep.cls) << "\n";
    if (rep.ln_height_bound) {
        out << "ln of the bound on h(x): " << log_line(*rep.ln_height_bound) << "\n";
    }
    out << "ln C: " << log_line(rep.ln_exponent_C) << "\n";
    out << "ln(2 C ln C), bound on ln m: " << log_line(rep.ln_exponent_bound) << "\n";
    for (const auto& [name, value] : rep.constants) {
        out << "  " << name << ": " << log_line(value) << "\n";
    }
    out << "  V(d) >= " << decimal_lower(rep.voutier.to_rational()) << "\n";
    for (const auto& flag : rep.flags) {
        out << "note: " << flag << "\n";
    }
    return kExitOk;
}

struct CheckLine {
    long m;
    std::string x, y, kind;
    bool pass;
};

int do_search(const std::string& path, const std::string& cap_text, long max_m, unsigned threads, bool json,
              std::ostream& out) {
    const ProblemInstance inst = parse_problem(read_file(path));
    const RationalInstance& rinst = rational_only(inst, "search");
    const HeightCap cap = HeightCap::parse(cap_text);
    SearchOptions opts;
    opts.threads = threads;

    std::vector<SweepEntry> entries;
    if (max_m > 0) {
        entries = exponent_sweep(rinst, max_m, cap, opts);
    } else {
        entries.push_back({rinst.m, solve(rinst, cap, opts)});
    }

    const bool analyzable = rinst.f.degree() >= 2;
    std::optional<ExponentBound> eb;
    if (analyzable) {
        const InvariantSet base = build_invariants(inst);
        eb = exponent_bound({base.n, base.d, base.s, base.H_f, base.abs_disc, base.P_S, base.N_S_b});
    }

    Json results = Json::array();
    std::vector<CheckLine> checks;
    for (const auto& entry : entries) {
        std::optional<LogMagnitude> height_bound;
        std::string cls = "unclassified";
        if (analyzable) {
            RationalInstance with_m = rinst;
            with_m.m = entry.m;
            const InvariantSet inv = build_invariants(with_m);
            const LeVequeClass c = classify(exponent_tuple(inv.m, inv.multiplicities), inv.m);
            cls = to_string(c);
            if (!is_excluded(c)) {
                height_bound = main_bound(c, inv);
            }
        }
        Json sols = Json::array();
        for (const auto& s : entry.solutions) {
            sols.push_back(Json{{"x", to_string(s.x)},
                                {"y", to_string(s.y)},
                                {"y_is_unit", s.y_is_unit},
                                {"y_is_zero", s.y_is_zero},
                                {"ln_height_x", decimal_upper(s.ln_height_x.to_rational())}});
            if (s.y_is_zero) {
                continue;
            }
            if (height_bound) {
                bool pass = true;
                if (s.ln_height_x.sign() > 0) {
                    pass = ln_of(LogMagnitude(s.ln_height_x, kDefaultPrecision)).upper() <= height_bound->upper();
                }
                checks.push_back({entry.m, to_string(s.x), to_string(s.y), "height", pass});
            }
            if (eb && !s.y_is_unit) {
                const bool pass = ln_upper(Rational(entry.m)).upper() <= eb->ln_m_max.upper();
                checks.push_back({entry.m, to_string(s.x), to_string(s.y), "exponent", pass});
            }
        }
        results.push_back(Json{{"m", entry.m}, {"class", cls}, {"solutions", sols}});
    }

    if (json) {
        Json doc;
        doc["tool"] = "seb";
        doc["version"] = kVersion;
        doc["instance"] = instance_json(inst);
        doc["cap_max_height"] = to_string(cap.max_height());
        doc["results"] = results;
        Json cj = Json::array();
        for (const auto& c : checks) {
            cj.push_back(Json{{"m", c.m}, {"x", c.x}, {"y", c.y}, {"kind", c.kind}, {"status", c.pass ? "PASS" : "FAIL"}});
        }
        doc["checks"] = cj;
        out << doc.dump(2) << "\n";
    } else {
        out << "max height " << to_string(cap.max_height()) << "\n";
        for (const auto& r : results) {
            out << "m = " << r["m"].get<long>() << " (" << r["class"].get<std::string>() << "): "
                << r["solutions"].size() << " solution(s)\n";
            for (const auto& s : r["solutions"]) {
                out << "  x = " << s["x"].get<std::string>() << ", y = " << s["y"].get<std::string>()
                    << (s["y_is_zero"].get<bool>() ? "  [y = 0]" : "") << (s["y_is_unit"].get<bool>() ? "  [unit]" : "")
                    << "  h(x) <= " << s["ln_height_x"].get<std::string>() << "\n";
            }
        }
        for (const auto& c : checks) {
            out << (c.pass ? "PASS" : "FAIL") << " " << c.kind << " bound, m = " << c.m << ", x = " << c.x
                << ", y = " << c.y << "\n";
        }
    }
    return kExitOk;
}

int do_verify(const std::string& path, const std::string& x_text, const std::string& y_text, std::ostream& out) {
    const Rational x = parse_rational(x_text);
    const Rational y = parse_rational(y_text);
    const ProblemInstance inst = parse_problem(read_file(path));
    const Verdict v = verify_solution(rational_only(inst, "verify"), x, y);
    out << (v.valid ? "valid" : "invalid: " + v.diagnostic) << "\n";
    return v.valid ? kExitOk : kExitInvalid;
}

struct ConstantsArgs {
    long n = 2, d = 1, s = 1;
    std::string hf = "1", disc = "1", ps = "1", nsb = "1";
};

int do_constants(const ConstantsArgs& a, bool json, unsigned precision, std::ostream& out) {
    if (a.n < 2 || a.d < 1 || a.s < 1) {
        throw InputError("need n >= 2, d >= 1, s >= 1");
    }
    const Rational H_f = parse_rational(a.hf);
    const Integer disc = parse_integer(a.disc);
    const Integer ps = parse_integer(a.ps);
    const Rational nsb = parse_rational(a.nsb);
    if (H_f < 1 || disc < 1 || ps < 1 || nsb < 1) {
        throw InputError("--hf, --disc, --ps, --nsb must be at least 1");
    }
    std::map<std::string, LogMagnitude> values;
    values["c1"] = baker_c1(a.n, a.d, precision);
    values["c2"] = decomposable_c2(a.s, a.d, precision);
    const LogMagnitude h_f = ln_upper(H_f, precision);
    for (auto& [k, v] : proof_constants({a.n, a.d, a.s, h_f, disc, ps, nsb}, precision)) {
        values[k] = v;
    }
    const Dyadic V = voutier_floor(a.d, precision);
    const bool holds = values["assembly_lhs"].upper() <= values["assembly_rhs"].upper();
    if (json) {
        Json doc;
        doc["tool"] = "seb";
        doc["version"] = kVersion;
        doc["precision_bits"] = precision;
        doc["params"] = Json{{"n", a.n}, {"d", a.d}, {"s", a.s}, {"H_f", to_string(H_f)}, {"abs_disc", to_string(disc)},
                             {"P_S", to_string(ps)}, {"N_S_b", to_string(nsb)}};
        Json cj;
        for (const auto& [k, v] : values) {
            cj[k] = log_json(v);
        }
        doc["constants"] = cj;
        doc["voutier_floor"] = Json{{"lower", decimal_lower(V.to_rational())}, {"dyadic", dyadic_text(V)}};
        doc["assembly"] = holds ? "PASS" : "FAIL";
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& [k, v] : values) {
            out << "ln " << k << ": " << log_line(v) << "\n";
        }
        out << "V(d) >= " << decimal_lower(V.to_rational()) << "\n";
        out << (holds ? "PASS" : "FAIL") << " assembly 6 n^2 s C5 C6 P_S^{n^2} <= C\n";
    }
    return kExitOk;
}

}  // namespace

ProblemInstance parse_problem(std::string_view json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw InputError("problem file must hold a JSON object");
    }
    const Json& mode = field(doc, "mode");
    if (!mode.is_string()) {
        throw InputError("field 'mode' must be a string");
    }
    ProblemInstance inst;
    if (mode == "rational") {
        reject_foreign_keys(doc, kRationalKeys, "rational");
        RationalInstance r;
        std::vector<Rational> coeffs;
        for (const auto& c : array_field(doc, "f")) {
            coeffs.push_back(parse_rational(scalar_text(c, "f")));
        }
        r.f = Polynomial(std::move(coeffs));
        r.b = rational_field(doc, "b");
        const Json& m = field(doc, "m");
        if (!m.is_number_integer()) {
            throw InputError("field 'm' must be an integer");
        }
        r.m = m.get<long>();
        std::vector<Integer> primes;
        for (const auto& p : array_field(doc, "primes")) {
            primes.push_back(parse_integer(scalar_text(p, "primes")));
        }
        r.places = PlaceSet(std::move(primes));
        inst = std::move(r);
    } else if (mode == "invariant") {
        reject_foreign_keys(doc, kInvariantKeys, "invariant");
        InvariantInstance v;
        v.n = integer_field(doc, "n");
        v.r = integer_field(doc, "r");
        v.m = integer_field(doc, "m");
        v.d = integer_field(doc, "d");
        v.s = integer_field(doc, "s");
        v.abs_disc = integer_field(doc, "abs_disc");
        v.P_S = integer_field(doc, "P_S");
        v.Q_S = integer_field(doc, "Q_S");
        v.N_S_b = rational_field(doc, "N_S_b");
        v.H_f = rational_field(doc, "H_f");
        if (doc.contains("H_fstar")) {
            v.H_fstar = rational_field(doc, "H_fstar");
        }
        for (const auto& e : array_field(doc, "multiplicities")) {
            const Integer val = parse_integer(scalar_text(e, "multiplicities"));
            if (!val.fits_slong_p()) {
                throw InputError("multiplicity out of range");
            }
            v.multiplicities.push_back(val);
        }
        inst = std::move(v);
    } else {
        throw InputError("mode must be 'rational' or 'invariant'");
    }
    build_invariants(inst);
    return inst;
}

std::string serialize_problem(const ProblemInstance& inst) { return instance_json(inst).dump(2) + "\n"; }

std::string analyze_report_json(const ProblemInstance& inst, unsigned precision) {
    const InvariantSet inv = build_invariants(inst);
    return report_json(inst, inv, analyze(inv, precision), precision).dump(2) + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds, classification and small-solution search for f(x) = b y^m over S-integers", "seb"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("seb ") + kVersion);

    std::string file;
    bool json = false;
    unsigned precision = kDefaultPrecision;

    auto* analyze_cmd = app.add_subcommand("analyze", "classify an instance and evaluate every bound");
    analyze_cmd->add_option("file", file, "problem file (JSON)")->required();
    analyze_cmd->add_flag("--json", json, "machine-readable report");
    analyze_cmd->add_option("--precision", precision, "bits of working precision");

    std::string cap_text;
    long max_m = 0;
    unsigned threads = 1;
    auto* search_cmd = app.add_subcommand("search", "enumerate solutions up to a height cap");
    search_cmd->add_option("file", file, "problem file (JSON, rational mode)")->required();
    search_cmd->add_option("--cap", cap_text, "cap on h(x): a number, or ln(N) for an integer N")->required();
    search_cmd->add_option("--max-m", max_m, "sweep m over [2, M] instead of the file's m");
    search_cmd->add_option("--threads", threads, "worker threads");
    search_cmd->add_flag("--json", json, "machine-readable output");

    std::string x_text, y_text;
    auto* verify_cmd = app.add_subcommand("verify", "check one candidate solution exactly");
    verify_cmd->add_option("file", file, "problem file (JSON, rational mode)")->required();
    verify_cmd->add_option("--x", x_text, "x as p/q")->required();
    verify_cmd->add_option("--y", y_text, "y as p/q")->required();

    ConstantsArgs cargs;
    auto* constants_cmd = app.add_subcommand("constants", "dump the proof constants for given invariants");
    constants_cmd->add_option("--n", cargs.n, "degree n")->required();
    constants_cmd->add_option("--d", cargs.d, "field degree d")->required();
    constants_cmd->add_option("--s", cargs.s, "size of S")->required();
    constants_cmd->add_option("--hf", cargs.hf, "H(f) as p/q");
    constants_cmd->add_option("--disc", cargs.disc, "|D_K|");
    constants_cmd->add_option("--ps", cargs.ps, "P_S");
    constants_cmd->add_option("--nsb", cargs.nsb, "N_S(b) as p/q");
    constants_cmd->add_option("--precision", precision, "bits of working precision");
    constants_cmd->add_flag("--json", json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << "seb " << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (analyze_cmd->parsed()) {
            return do_analyze(file, json, checked_precision(precision), out);
        }
        if (search_cmd->parsed()) {
            if (threads == 0) {
                throw InputError("--threads must be at least 1");
            }
            if (search_cmd->count("--max-m") > 0 && max_m < 2) {
                throw InputError("--max-m must be at least 2");
            }
            return do_search(file, cap_text, max_m, threads, json, out);
        }
        if (verify_cmd->parsed()) {
            return do_verify(file, x_text, y_text, out);
        }
        return do_constants(cargs, json, checked_precision(precision), out);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace seb
