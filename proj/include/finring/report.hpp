#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "finring/harness.hpp"

namespace finring {

enum class ReportFormat { text, records };

inline ReportFormat parse_format(const std::string& name) {
    if (name == "text") return ReportFormat::text;
    if (name == "records") return ReportFormat::records;
    throw ValidationError("unknown report format '" + name + "' (expected text or records)");
}

namespace detail {

inline std::string escape_quoted(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline std::string bool_word(bool b) { return b ? "true" : "false"; }

inline std::string pad(const std::string& s, std::size_t width) {
    std::string out = s;
    while (out.size() < width) out += ' ';
    return out;
}

}  // namespace detail

/// One self-contained line per verdict; field order is fixed and stable for
/// golden files and re-ingestion.
inline std::string format_record(const TheoremVerdict& v) {
    std::string witness = v.ok() ? std::string() : v.witness();
    return "theorem=" + v.theorem + " fingerprint=" + v.fingerprint +
           " lhs=" + detail::bool_word(v.lhs.holds) + " rhs=" + detail::bool_word(v.rhs.holds) +
           " agree=" + detail::bool_word(v.agree) + " seed=" + std::to_string(v.seed) +
           " witness=\"" + detail::escape_quoted(witness) + "\"";
}

struct ParsedRecord {
    std::string theorem;
    std::string fingerprint;
    bool lhs = false;
    bool rhs = false;
    bool agree = false;
    std::uint64_t seed = 0;
    std::string witness;
};

/// Parses a line emitted by format_record. Lines starting with '#' are run
/// headers, not records; callers should skip them.
inline ParsedRecord parse_record(const std::string& line) {
    ParsedRecord rec;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) -> ParsedRecord& {
        throw ValidationError("bad record line (" + why + "): " + line);
    };
    auto read_field = [&](const std::string& key) {
        std::string prefix = key + "=";
        if (line.compare(i, prefix.size(), prefix) != 0) fail("expected " + key);
        i += prefix.size();
        if (key == "witness") {
            if (i >= line.size() || line[i] != '"') fail("expected quoted witness");
            ++i;
            std::string out;
            while (i < line.size() && line[i] != '"') {
                if (line[i] == '\\' && i + 1 < line.size()) ++i;
                out += line[i++];
            }
            if (i >= line.size()) fail("unterminated witness");
            ++i;
            return out;
        }
        std::size_t end = line.find(' ', i);
        if (end == std::string::npos) end = line.size();
        std::string out = line.substr(i, end - i);
        i = end;
        if (i < line.size() && line[i] == ' ') ++i;
        return out;
    };
    auto to_bool = [&](const std::string& w) {
        if (w == "true") return true;
        if (w == "false") return false;
        fail("bad boolean '" + w + "'");
        return false;
    };
    rec.theorem = read_field("theorem");
    rec.fingerprint = read_field("fingerprint");
    rec.lhs = to_bool(read_field("lhs"));
    rec.rhs = to_bool(read_field("rhs"));
    rec.agree = to_bool(read_field("agree"));
    rec.seed = std::stoull(read_field("seed"));
    rec.witness = read_field("witness");
    return rec;
}

/// Human-readable table. Aux reformulations and notes print as indented
/// lines under their row.
inline std::string format_text(const std::vector<TheoremVerdict>& verdicts) {
    std::ostringstream out;
    out << detail::pad("theorem", 24) << detail::pad("fingerprint", 18)
        << detail::pad("lhs", 7) << detail::pad("rhs", 7) << detail::pad("agree", 10)
        << "witness\n";
    for (const TheoremVerdict& v : verdicts) {
        std::string witness = v.ok() ? std::string("-") : v.witness();
        out << detail::pad(v.theorem, 24) << detail::pad(v.fingerprint, 18)
            << detail::pad(detail::bool_word(v.lhs.holds), 7)
            << detail::pad(detail::bool_word(v.rhs.holds), 7)
            << detail::pad(v.agree ? "AGREE" : "DISAGREE", 10) << witness << "\n";
        for (const AuxCheck& a : v.aux) {
            out << "  aux " << a.name << ": lhs=" << detail::bool_word(a.lhs)
                << " rhs=" << detail::bool_word(a.rhs)
                << (a.agree ? " agree" : " DISAGREE");
            if (!a.note.empty()) out << " (" << a.note << ")";
            out << "\n";
        }
        for (const std::string& n : v.notes) out << "  note: " << n << "\n";
    }
    return out.str();
}

inline std::string format_report(const std::vector<TheoremVerdict>& verdicts,
                                 ReportFormat format) {
    if (format == ReportFormat::text) return format_text(verdicts);
    std::string out;
    for (const TheoremVerdict& v : verdicts) out += format_record(v) + "\n";
    return out;
}

/// Appends a run header plus the verdict records to a log file. The header
/// carries the timestamp and tool version; verdict lines themselves are
/// timestamp-free so identical inputs reproduce them bit for bit.
inline void append_run_log(const std::string& path, const std::string& command_summary,
                           std::uint64_t seed, const std::vector<TheoremVerdict>& verdicts,
                           std::string version, std::string timestamp) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw ValidationError("cannot open log file " + path);
    out << "# run time=" << timestamp << " version=" << version << " seed=" << seed
        << " cmd=\"" << detail::escape_quoted(command_summary) << "\"\n";
    for (const TheoremVerdict& v : verdicts) out << format_record(v) << "\n";
}

}  // namespace finring
