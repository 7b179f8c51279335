#pragma once

// Text formats.
//
// SDS document, line oriented:
//   # comment
//   n 191
//   generator 39
//   J1: 1 7 9 ...        (coset indices; needs a generator)
//   S2: 0 5 17 ...       (explicit residues)
// Exactly four set lines, one per k in 1..4, each in either form.
//
// Matrix document: the order m on the first line, then m rows of '+'/'-'.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gsds/gs_construct.hpp"
#include "gsds/sds_core.hpp"

namespace gsds {

/// Malformed input. line() is 1-based, 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class SetForm { indices, residues };

struct SetSpec {
    SetForm form = SetForm::residues;
    std::vector<std::uint32_t> values;  // ascending

    friend bool operator==(const SetSpec&, const SetSpec&) = default;
};

struct SdsDocument {
    Residue modulus = 0;
    std::optional<Residue> generator;
    std::array<SetSpec, 4> sets;
    std::vector<std::string> comments;

    friend bool operator==(const SdsDocument&, const SdsDocument&) = default;
};

/// Validates the header, index ranges against the coset table, residue
/// ranges and duplicates; errors carry the offending line number.
SdsDocument parse_sds(std::string_view text);
/// Canonical text: comments, header, then J/S lines in ascending order.
std::string emit_sds(const SdsDocument& doc);

SdsFamily to_family(const SdsDocument& doc);
/// J form when the family carries coset provenance, S form otherwise.
SdsDocument to_document(const SdsFamily& f, std::vector<std::string> comments = {});
/// Every set rewritten as explicit residues; the generator is kept.
SdsDocument to_explicit(const SdsDocument& doc);

PmOneMatrix parse_matrix(std::string_view text);
std::string emit_matrix(const PmOneMatrix& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace gsds
