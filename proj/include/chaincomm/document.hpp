#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "chaincomm/commutator.hpp"
#include "chaincomm/verify.hpp"
#include "chaincomm/witness.hpp"

// JSON interchange, format_version "1". Rationals travel as strings "a/b"
// or "a" in lowest terms, F_p entries as integers in [0, p). Matrices are
// row-major arrays of arrays; a 0 x n matrix is [].

namespace chaincomm {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

struct SchemaViolation {
  std::string path;  // JSON pointer, "" for the root
  std::string code;  // malformed_number, not_lowest_terms, ...
  std::string message;
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(std::vector<SchemaViolation> violations);
  const std::vector<SchemaViolation>& violations() const { return violations_; }

 private:
  std::vector<SchemaViolation> violations_;
};

using Witness = std::variant<PointwiseWitness, CommutatorWitness, HomotopyWitness>;

struct WitnessEntry {
  std::optional<int> theorem;
  Witness witness;
};

struct Document {
  ComplexPtr complex;
  std::optional<ChainEndomorphism> endomorphism;
  std::vector<WitnessEntry> witnesses;
};

/// Throws SchemaError listing every violation found. Structural problems
/// stop the parse early; d o d = 0 and the chain-map condition are checked
/// once all shapes are known.
Document parse_document(const json& j);
/// Parses text first; malformed JSON is reported as code "malformed_json".
Document parse_document_text(const std::string& text);

json serialize_document(const Document& d);

json scalar_to_json(const Scalar& s);
json matrix_to_json(const Matrix& m);
json field_to_json(const FieldSpec& f);
json witness_to_json(const WitnessEntry& w);
json violations_to_json(const std::vector<SchemaViolation>& v);

json analysis_to_json(const Analysis& a);
json example2_to_json(const Example2Report& r);
json construction_error_to_json(const ConstructionError& e);
json verification_to_json(const VerificationResult& r);

}  // namespace chaincomm
