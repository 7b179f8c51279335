#include "gsds/sds_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gsds/residue_cosets.hpp"

namespace gsds {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        std::size_t end = pos;
        while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
        if (end > pos) out.push_back(s.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    return v;
}

}  // namespace

SdsDocument parse_sds(std::string_view text) {
    SdsDocument doc;
    std::optional<std::size_t> n_line, g_line;
    std::array<std::size_t, 4> set_line{};
    std::int64_t n_raw = 0, g_raw = 0;
    std::array<std::vector<std::int64_t>, 4> raw;

    const auto lines = split_lines(text);
    for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
        std::string_view line = trim(lines[ln - 1]);
        if (line.empty()) continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
            doc.comments.emplace_back(line);
            continue;
        }
        auto colon = line.find(':');
        if (colon != std::string_view::npos) {
            std::string_view key = trim(line.substr(0, colon));
            if (key.size() != 2 || (key[0] != 'J' && key[0] != 'S') || key[1] < '1' || key[1] > '4')
                throw ParseError(ln, "unrecognized set label '" + std::string(key) + "'; expected J1..J4 or S1..S4");
            std::size_t k = static_cast<std::size_t>(key[1] - '1');
            if (set_line[k]) throw ParseError(ln, "set " + std::to_string(k + 1) + " given twice");
            set_line[k] = ln;
            doc.sets[k].form = key[0] == 'J' ? SetForm::indices : SetForm::residues;
            for (auto tok : tokens(line.substr(colon + 1))) raw[k].push_back(parse_int(tok, ln));
            continue;
        }
        auto tok = tokens(line);
        if (tok.size() == 2 && tok[0] == "n") {
            if (n_line) throw ParseError(ln, "modulus given twice");
            n_line = ln;
            n_raw = parse_int(tok[1], ln);
        } else if (tok.size() == 2 && tok[0] == "generator") {
            if (g_line) throw ParseError(ln, "generator given twice");
            g_line = ln;
            g_raw = parse_int(tok[1], ln);
        } else {
            throw ParseError(ln, "malformed line '" + std::string(line) + "'");
        }
    }

    if (!n_line) throw ParseError(0, "missing header line 'n <modulus>'");
    std::optional<PrimeModulus> modulus;
    try {
        modulus.emplace(n_raw);
    } catch (const std::invalid_argument& e) {
        throw ParseError(*n_line, e.what());
    }
    doc.modulus = modulus->value();

    std::optional<CosetTable> table;
    if (g_line) {
        try {
            table.emplace(coset_table_build(subgroup_generate(*modulus, g_raw)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(*g_line, e.what());
        }
        doc.generator = static_cast<Residue>(g_raw);
    }

    std::size_t count = 0;
    for (auto l : set_line) count += l != 0;
    if (count != 4) throw ParseError(0, "exactly four sets required, found " + std::to_string(count));

    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t ln = set_line[k];
        SetSpec& spec = doc.sets[k];
        std::int64_t limit = doc.modulus;
        if (spec.form == SetForm::indices) {
            if (!table) throw ParseError(ln, "coset index list J" + std::to_string(k + 1) + " requires a generator");
            limit = static_cast<std::int64_t>(table->size());
        }
        for (std::int64_t v : raw[k]) {
            if (v < 0 || v >= limit)
                throw ParseError(ln, std::string(spec.form == SetForm::indices ? "coset index " : "residue ") +
                                         std::to_string(v) + " out of range [0, " + std::to_string(limit - 1) + "]");
            spec.values.push_back(static_cast<std::uint32_t>(v));
        }
        std::sort(spec.values.begin(), spec.values.end());
        auto dup = std::adjacent_find(spec.values.begin(), spec.values.end());
        if (dup != spec.values.end())
            throw ParseError(ln, std::string(spec.form == SetForm::indices ? "duplicate coset index " : "duplicate residue ") +
                                     std::to_string(*dup));
    }
    return doc;
}

std::string emit_sds(const SdsDocument& doc) {
    std::ostringstream os;
    for (const auto& c : doc.comments) os << (c.empty() ? "#" : "# " + c) << '\n';
    os << "n " << doc.modulus << '\n';
    if (doc.generator) os << "generator " << *doc.generator << '\n';
    for (std::size_t k = 0; k < 4; ++k) {
        const SetSpec& s = doc.sets[k];
        os << (s.form == SetForm::indices ? 'J' : 'S') << k + 1 << ':';
        std::vector<std::uint32_t> v = s.values;
        std::sort(v.begin(), v.end());
        for (auto x : v) os << ' ' << x;
        os << '\n';
    }
    return os.str();
}

SdsFamily to_family(const SdsDocument& doc) {
    const PrimeModulus n(doc.modulus);
    std::optional<CosetTable> table;
    if (doc.generator) table.emplace(coset_table_build(subgroup_generate(n, *doc.generator)));
    bool all_indices = table.has_value();
    std::array<ResidueSet, 4> sets{ResidueSet(n), ResidueSet(n), ResidueSet(n), ResidueSet(n)};
    std::array<std::vector<std::size_t>, 4> j;
    for (std::size_t k = 0; k < 4; ++k) {
        const SetSpec& s = doc.sets[k];
        if (s.form == SetForm::indices) {
            if (!table) throw std::invalid_argument("coset index list requires a generator");
            j[k].assign(s.values.begin(), s.values.end());
            sets[k] = ResidueSet(n, coset_union(*table, j[k]));
        } else {
            all_indices = false;
            sets[k] = ResidueSet(n, std::vector<Residue>(s.values.begin(), s.values.end()));
        }
    }
    std::optional<CosetProvenance> prov;
    if (all_indices) prov = CosetProvenance{*doc.generator, j};
    return SdsFamily(n, std::move(sets), std::move(prov));
}

SdsDocument to_document(const SdsFamily& f, std::vector<std::string> comments) {
    SdsDocument doc;
    doc.modulus = f.modulus().value();
    doc.comments = std::move(comments);
    if (const auto& prov = f.provenance()) {
        doc.generator = prov->generator;
        for (std::size_t k = 0; k < 4; ++k)
            doc.sets[k] = {SetForm::indices, {prov->index_sets[k].begin(), prov->index_sets[k].end()}};
    } else {
        for (std::size_t k = 0; k < 4; ++k) {
            auto e = f.set(k).elements();
            doc.sets[k] = {SetForm::residues, {e.begin(), e.end()}};
        }
    }
    return doc;
}

SdsDocument to_explicit(const SdsDocument& doc) {
    SdsFamily f = to_family(doc);
    SdsDocument out = doc;
    for (std::size_t k = 0; k < 4; ++k) {
        auto e = f.set(k).elements();
        out.sets[k] = {SetForm::residues, {e.begin(), e.end()}};
    }
    return out;
}

PmOneMatrix parse_matrix(std::string_view text) {
    auto lines = split_lines(text);
    std::size_t ln = 0;
    auto next_nonblank = [&]() -> std::optional<std::string_view> {
        while (ln < lines.size()) {
            auto l = trim(lines[ln++]);
            if (!l.empty()) return l;
        }
        return std::nullopt;
    };
    auto header = next_nonblank();
    if (!header) throw ParseError(0, "empty matrix document");
    const std::int64_t m = parse_int(*header, ln);
    if (m <= 0) throw ParseError(ln, "matrix order must be positive");
    const auto order = static_cast<std::size_t>(m);
    std::vector<Sign> e;
    e.reserve(order * order);
    for (std::size_t i = 0; i < order; ++i) {
        auto row = next_nonblank();
        if (!row) throw ParseError(0, "expected " + std::to_string(order) + " rows, found " + std::to_string(i));
        if (row->size() != order)
            throw ParseError(ln, "row has " + std::to_string(row->size()) + " entries, expected " + std::to_string(order));
        for (char ch : *row) {
            if (ch != '+' && ch != '-') throw ParseError(ln, std::string("invalid matrix character '") + ch + "'");
            e.push_back(ch == '+' ? 1 : -1);
        }
    }
    if (next_nonblank()) throw ParseError(ln, "trailing content after " + std::to_string(order) + " rows");
    return PmOneMatrix(order, std::move(e));
}

std::string emit_matrix(const PmOneMatrix& m) {
    std::string out = std::to_string(m.order()) + '\n';
    out.reserve(out.size() + m.order() * (m.order() + 1));
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (Sign s : m.row(i)) out.push_back(s > 0 ? '+' : '-');
        out.push_back('\n');
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace gsds
