#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finring/biamalg.hpp"

namespace finring {

/// Error in an instance script, carrying the 1-based line and column of the
/// first offending token. `syntax`, `undefined_name` and `type_mismatch` are
/// grammar-level faults; mathematically invalid constructions surface as
/// ValidationError with a line prefix instead.
class ScriptError : public Error {
  public:
    enum class Kind { syntax, undefined_name, type_mismatch };

    ScriptError(Kind kind, std::size_t line, std::size_t col, const std::string& msg)
        : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          kind(kind),
          line(line),
          col(col) {}

    Kind kind;
    std::size_t line;
    std::size_t col;
};

/// A parsed and evaluated instance script: ordered name bindings for rings,
/// ideals, homomorphisms and bi-amalgamation data, plus optional directives
/// (caps, seed). Evaluation happens during parsing, in binding order.
struct InstanceScript {
    std::vector<std::string> statements;  // canonical one-per-line reprint
    std::map<std::string, FiniteRing> rings;
    std::map<std::string, Ideal> ideals;
    std::map<std::string, RingHom> homs;
    std::map<std::string, BiAmalgDatum> data;
    Caps effective_caps;
    std::optional<std::uint64_t> seed;

    std::string canonical_text() const {
        std::string out;
        for (const std::string& s : statements) out += s + "\n";
        return out;
    }

    bool operator==(const InstanceScript& other) const {
        return statements == other.statements;
    }
};

/// Parse-time configuration: the starting caps (usually environment defaults)
/// and per-cap locks that make command-line flags win over script directives.
struct ParseConfig {
    Caps caps;
    bool ring_cap_locked = false;
    bool enum_cap_locked = false;
};

namespace detail {

struct Cursor {
    const std::string& s;
    std::size_t line_no;
    std::size_t pos = 0;

    std::size_t col() const { return pos + 1; }

    [[noreturn]] void fail(ScriptError::Kind kind, const std::string& msg) const {
        throw ScriptError(kind, line_no, col(), msg);
    }
    [[noreturn]] void syntax(const std::string& msg) const {
        fail(ScriptError::Kind::syntax, msg);
    }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    bool peek_is(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) syntax(std::string("expected '") + c + "'");
    }
    bool eat_arrow() {
        skip_ws();
        if (pos + 1 < s.size() && s[pos] == '-' && s[pos + 1] == '>') {
            pos += 2;
            return true;
        }
        return false;
    }
    void expect_arrow() {
        if (!eat_arrow()) syntax("expected '->'");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            syntax("expected an identifier");
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    /// Identifier that may contain single dashes (option keys).
    std::string dashed_ident() {
        std::string out = ident();
        while (pos < s.size() && s[pos] == '-' && pos + 1 < s.size() &&
               std::isalpha(static_cast<unsigned char>(s[pos + 1]))) {
            ++pos;
            out += "-" + ident();
        }
        return out;
    }

    unsigned long number() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            syntax("expected a number");
        unsigned long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + static_cast<unsigned long>(s[pos++] - '0');
        return v;
    }

    /// A canonical element literal: an integer or a balanced parenthesized
    /// tuple, captured verbatim.
    std::string element() {
        skip_ws();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return s.substr(start, pos - start);
        }
        if (pos < s.size() && s[pos] == '(') {
            std::size_t start = pos;
            int depth = 0;
            while (pos < s.size()) {
                if (s[pos] == '(') ++depth;
                if (s[pos] == ')') {
                    --depth;
                    if (depth == 0) {
                        ++pos;
                        std::string raw = s.substr(start, pos - start);
                        std::string out;
                        for (char c : raw)
                            if (c != ' ' && c != '\t') out += c;
                        return out;
                    }
                }
                ++pos;
            }
            syntax("unbalanced parentheses in element literal");
        }
        syntax("expected an element literal");
        return {};
    }
};

}  // namespace detail

/// Parses (and evaluates, in order) an instance script. Grammar, one binding
/// per line, '#' starts a comment:
///
///   ring  NAME = Z(n) | product(R,S) | quotient(R,I) | trivext(R, module(M))
///               | biamalg(D) | dup(R,I)
///   ideal NAME = gen(R; e1,e2,...)            (empty generator list allowed)
///   hom   NAME = id(R) | proj(R->S) | incl(R->S) | graph(H) | map(R->S; a:b,...)
///   datum NAME = (F,G,J,JP)
///   option KEY = VALUE                        (max-ring-size, max-ideal-enum, seed)
///
/// where a module spec M is an ideal name, R/I for a quotient module, or a
/// '+'-joined sum of those; elements use the canonical encoding of their ring.
inline InstanceScript parse_script(const std::string& text, const ParseConfig& cfg = {}) {
    InstanceScript script;
    script.effective_caps = cfg.caps;

    auto find_ring = [&](detail::Cursor& c, const std::string& name) -> const FiniteRing& {
        auto it = script.rings.find(name);
        if (it != script.rings.end()) return it->second;
        if (script.ideals.count(name) || script.homs.count(name) || script.data.count(name))
            c.fail(ScriptError::Kind::type_mismatch, "'" + name + "' is not a ring");
        c.fail(ScriptError::Kind::undefined_name, "undefined name '" + name + "'");
    };
    auto find_ideal = [&](detail::Cursor& c, const std::string& name) -> const Ideal& {
        auto it = script.ideals.find(name);
        if (it != script.ideals.end()) return it->second;
        if (script.rings.count(name) || script.homs.count(name) || script.data.count(name))
            c.fail(ScriptError::Kind::type_mismatch, "'" + name + "' is not an ideal");
        c.fail(ScriptError::Kind::undefined_name, "undefined name '" + name + "'");
    };
    auto find_hom = [&](detail::Cursor& c, const std::string& name) -> const RingHom& {
        auto it = script.homs.find(name);
        if (it != script.homs.end()) return it->second;
        if (script.rings.count(name) || script.ideals.count(name) || script.data.count(name))
            c.fail(ScriptError::Kind::type_mismatch, "'" + name + "' is not a hom");
        c.fail(ScriptError::Kind::undefined_name, "undefined name '" + name + "'");
    };
    auto find_datum = [&](detail::Cursor& c, const std::string& name) -> const BiAmalgDatum& {
        auto it = script.data.find(name);
        if (it != script.data.end()) return it->second;
        if (script.rings.count(name) || script.ideals.count(name) || script.homs.count(name))
            c.fail(ScriptError::Kind::type_mismatch, "'" + name + "' is not a datum");
        c.fail(ScriptError::Kind::undefined_name, "undefined name '" + name + "'");
    };
    auto check_fresh = [&](detail::Cursor& c, const std::string& name) {
        if (script.rings.count(name) || script.ideals.count(name) || script.homs.count(name) ||
            script.data.count(name))
            c.fail(ScriptError::Kind::type_mismatch, "name '" + name + "' is already bound");
    };

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (start > text.size() && line.empty()) break;

        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        detail::Cursor c{line, line_no};
        if (c.eof()) continue;

        const Caps& caps = script.effective_caps;
        std::string keyword = c.ident();

        auto wrap_eval = [&](auto&& fn) {
            auto prefix = [&](const char* what) {
                return "line " + std::to_string(line_no) + ": " + what;
            };
            try {
                return fn();
            } catch (const ScriptError&) {
                throw;
            } catch (const CapExceededError& e) {
                throw CapExceededError(prefix(e.what()));
            } catch (const ZeroRingError& e) {
                throw ZeroRingError(prefix(e.what()));
            } catch (const DegenerateLocalizationError& e) {
                throw DegenerateLocalizationError(prefix(e.what()));
            } catch (const LatticeTooLargeError& e) {
                throw LatticeTooLargeError(prefix(e.what()));
            } catch (const ValidationError& e) {
                throw ValidationError(prefix(e.what()));
            }
        };

        if (keyword == "option") {
            std::string key = c.dashed_ident();
            c.expect('=');
            unsigned long value = c.number();
            if (!c.eof()) c.syntax("trailing input after option");
            if (key == "max-ring-size") {
                if (!cfg.ring_cap_locked) script.effective_caps.max_ring_size = value;
            } else if (key == "max-ideal-enum") {
                if (!cfg.enum_cap_locked) script.effective_caps.max_ideal_enum = value;
            } else if (key == "seed") {
                script.seed = value;
            } else {
                c.syntax("unknown option '" + key + "'");
            }
            script.statements.push_back("option " + key + " = " + std::to_string(value));
            continue;
        }

        if (keyword == "ring") {
            std::string name = c.ident();
            check_fresh(c, name);
            c.expect('=');
            std::string head = c.ident();
            std::string canonical;
            FiniteRing value;
            if (head == "Z") {
                c.expect('(');
                unsigned long n = c.number();
                c.expect(')');
                value = wrap_eval([&] { return make_zmod(static_cast<unsigned>(n), caps); });
                canonical = "Z(" + std::to_string(n) + ")";
            } else if (head == "product") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect(',');
                std::string r2 = c.ident();
                c.expect(')');
                const FiniteRing& a = find_ring(c, r1);
                const FiniteRing& b = find_ring(c, r2);
                value = wrap_eval([&] { return make_product(a, b, caps); });
                canonical = "product(" + r1 + "," + r2 + ")";
            } else if (head == "quotient") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect(',');
                std::string i1 = c.ident();
                c.expect(')');
                const FiniteRing& a = find_ring(c, r1);
                const Ideal& i = find_ideal(c, i1);
                if (!i.ring().same_ring(a))
                    c.fail(ScriptError::Kind::type_mismatch,
                           "ideal '" + i1 + "' is not an ideal of '" + r1 + "'");
                value = wrap_eval([&] { return make_quotient(a, i.elems(), caps); });
                canonical = "quotient(" + r1 + "," + i1 + ")";
            } else if (head == "trivext") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect(',');
                const FiniteRing& a = find_ring(c, r1);
                std::string mod_kw = c.ident();
                if (mod_kw != "module") c.syntax("expected module(...)");
                c.expect('(');
                Module mod;
                std::string mod_canonical;
                while (true) {
                    std::string first = c.ident();
                    Module term;
                    std::string term_text;
                    if (c.eat('/')) {
                        std::string i1 = c.ident();
                        const FiniteRing& base = find_ring(c, first);
                        const Ideal& i = find_ideal(c, i1);
                        if (!base.same_ring(a) || !i.ring().same_ring(a))
                            c.fail(ScriptError::Kind::type_mismatch,
                                   "quotient module must be over '" + r1 + "'");
                        term = wrap_eval([&] { return make_quotient_module(a, i.elems()); });
                        term_text = first + "/" + i1;
                    } else {
                        const Ideal& i = find_ideal(c, first);
                        if (!i.ring().same_ring(a))
                            c.fail(ScriptError::Kind::type_mismatch,
                                   "ideal '" + first + "' is not an ideal of '" + r1 + "'");
                        term = wrap_eval([&] { return make_ideal_module(a, i.elems()); });
                        term_text = first;
                    }
                    if (!mod) {
                        mod = term;
                        mod_canonical = term_text;
                    } else {
                        mod = wrap_eval([&] { return make_direct_sum(mod, term); });
                        mod_canonical += "+" + term_text;
                    }
                    if (!c.eat('+')) break;
                }
                c.expect(')');
                c.expect(')');
                value = wrap_eval([&] { return make_trivext(a, mod, caps); });
                canonical = "trivext(" + r1 + ", module(" + mod_canonical + "))";
            } else if (head == "biamalg") {
                c.expect('(');
                std::string d1 = c.ident();
                c.expect(')');
                const BiAmalgDatum& d = find_datum(c, d1);
                value = wrap_eval([&] { return construct(d, caps).ring; });
                canonical = "biamalg(" + d1 + ")";
            } else if (head == "dup") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect(',');
                std::string i1 = c.ident();
                c.expect(')');
                const FiniteRing& a = find_ring(c, r1);
                const Ideal& i = find_ideal(c, i1);
                if (!i.ring().same_ring(a))
                    c.fail(ScriptError::Kind::type_mismatch,
                           "ideal '" + i1 + "' is not an ideal of '" + r1 + "'");
                value = wrap_eval([&] { return duplication(a, i, caps).ring; });
                canonical = "dup(" + r1 + "," + i1 + ")";
            } else {
                c.syntax("unknown ring constructor '" + head + "'");
            }
            if (!c.eof()) c.syntax("trailing input after ring expression");
            script.rings.emplace(name, value);
            script.statements.push_back("ring " + name + " = " + canonical);
            continue;
        }

        if (keyword == "ideal") {
            std::string name = c.ident();
            check_fresh(c, name);
            c.expect('=');
            std::string head = c.ident();
            if (head != "gen") c.syntax("expected gen(R; e1,e2,...)");
            c.expect('(');
            std::string r1 = c.ident();
            const FiniteRing& ring = find_ring(c, r1);
            c.expect(';');
            std::vector<Elem> gens;
            std::vector<std::string> gen_texts;
            if (!c.peek_is(')')) {
                while (true) {
                    std::string lit = c.element();
                    Elem e = wrap_eval([&] { return ring.parse(lit); });
                    gens.push_back(e);
                    gen_texts.push_back(ring.format(e));
                    if (!c.eat(',')) break;
                }
            }
            c.expect(')');
            if (!c.eof()) c.syntax("trailing input after ideal expression");
            Ideal value = wrap_eval([&] { return ideal_generated(ring, gens); });
            std::string canonical = "gen(" + r1 + ";";
            for (std::size_t i = 0; i < gen_texts.size(); ++i)
                canonical += (i ? "," : " ") + gen_texts[i];
            canonical += ")";
            script.ideals.emplace(name, std::move(value));
            script.statements.push_back("ideal " + name + " = " + canonical);
            continue;
        }

        if (keyword == "hom") {
            std::string name = c.ident();
            check_fresh(c, name);
            c.expect('=');
            std::string head = c.ident();
            RingHom value;
            std::string canonical;
            if (head == "id") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect(')');
                value = wrap_eval([&] { return hom_identity(find_ring(c, r1)); });
                canonical = "id(" + r1 + ")";
            } else if (head == "proj") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect_arrow();
                std::string r2 = c.ident();
                c.expect(')');
                const FiniteRing& from = find_ring(c, r1);
                const FiniteRing& to = find_ring(c, r2);
                value = wrap_eval([&] {
                    if (from.kind() == RingKind::zmod && to.kind() == RingKind::zmod)
                        return hom_zmod_residue(from, to);
                    return hom_quotient_projection(from, to);
                });
                canonical = "proj(" + r1 + "->" + r2 + ")";
            } else if (head == "incl") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect_arrow();
                std::string r2 = c.ident();
                c.expect(')');
                const FiniteRing& from = find_ring(c, r1);
                const FiniteRing& to = find_ring(c, r2);
                value = wrap_eval([&] {
                    if (to.kind() == RingKind::trivial_extension &&
                        to.trivext_base().same_ring(from))
                        return hom_trivext_inclusion(from, to);
                    if (from.kind() == RingKind::subring &&
                        from.subring_ambient().same_ring(to))
                        return hom_subring_inclusion(from, to);
                    return hom_diagonal(from, to);
                });
                canonical = "incl(" + r1 + "->" + r2 + ")";
            } else if (head == "graph") {
                c.expect('(');
                std::string h1 = c.ident();
                c.expect(')');
                const RingHom& phi = find_hom(c, h1);
                value = wrap_eval([&] { return hom_graph(phi, caps); });
                canonical = "graph(" + h1 + ")";
            } else if (head == "map") {
                c.expect('(');
                std::string r1 = c.ident();
                c.expect_arrow();
                std::string r2 = c.ident();
                c.expect(';');
                const FiniteRing& from = find_ring(c, r1);
                const FiniteRing& to = find_ring(c, r2);
                constexpr Elem kUnset = static_cast<Elem>(-1);
                std::vector<Elem> map(from.size(), kUnset);
                std::vector<std::pair<std::string, std::string>> pair_texts;
                while (true) {
                    std::string lit_a = c.element();
                    c.expect(':');
                    std::string lit_b = c.element();
                    Elem a = wrap_eval([&] { return from.parse(lit_a); });
                    Elem b = wrap_eval([&] { return to.parse(lit_b); });
                    map[a] = b;
                    pair_texts.emplace_back(from.format(a), to.format(b));
                    if (!c.eat(',')) break;
                }
                c.expect(')');
                for (Elem a = 0; a < from.size(); ++a)
                    if (map[a] == kUnset)
                        c.fail(ScriptError::Kind::type_mismatch,
                               "map does not cover element " + from.format(a));
                value = wrap_eval([&] { return make_hom_from_map(from, to, map); });
                canonical = "map(" + r1 + "->" + r2 + ";";
                for (std::size_t i = 0; i < pair_texts.size(); ++i)
                    canonical += (i ? "," : " ") + pair_texts[i].first + ":" +
                                 pair_texts[i].second;
                canonical += ")";
            } else {
                c.syntax("unknown hom constructor '" + head + "'");
            }
            // Reposition cursor checks happen inside the branches above.
            if (!c.eof()) c.syntax("trailing input after hom expression");
            script.homs.emplace(name, std::move(value));
            script.statements.push_back("hom " + name + " = " + canonical);
            continue;
        }

        if (keyword == "datum") {
            std::string name = c.ident();
            check_fresh(c, name);
            c.expect('=');
            c.expect('(');
            std::string f1 = c.ident();
            c.expect(',');
            std::string g1 = c.ident();
            c.expect(',');
            std::string j1 = c.ident();
            c.expect(',');
            std::string j2 = c.ident();
            c.expect(')');
            if (!c.eof()) c.syntax("trailing input after datum expression");
            const RingHom& f = find_hom(c, f1);
            const RingHom& g = find_hom(c, g1);
            const Ideal& j = find_ideal(c, j1);
            const Ideal& jp = find_ideal(c, j2);
            BiAmalgDatum value = wrap_eval([&] { return validate_datum(f, g, j, jp); });
            script.data.emplace(name, std::move(value));
            script.statements.push_back("datum " + name + " = (" + f1 + "," + g1 + "," + j1 +
                                        "," + j2 + ")");
            continue;
        }

        c.syntax("unknown statement '" + keyword +
                 "' (expected ring, ideal, hom, datum or option)");
    }
    return script;
}

}  // namespace finring
