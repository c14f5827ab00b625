// chaincomm: analyze chain endomorphisms, build and check commutator
// witnesses. Standard output carries JSON only.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "chaincomm/document.hpp"
#include "chaincomm/random.hpp"

using namespace chaincomm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitObstruction = 2;
constexpr int kExitLimitation = 3;
constexpr int kExitUsage = 64;
constexpr int kExitSchema = 65;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

Document load(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_document_text(text);
}

const ChainEndomorphism& require_endomorphism(const Document& d) {
  if (!d.endomorphism) throw SchemaError({{"/endomorphism", "missing_field", "this command needs an endomorphism"}});
  return *d.endomorphism;
}

int run_analyze(const std::string& path) {
  const auto doc = load(path);
  emit(analysis_to_json(analyze(require_endomorphism(doc))));
  return kExitOk;
}

int run_witness(const std::string& path, int theorem) {
  auto doc = load(path);
  const auto& phi = require_endomorphism(doc);
  try {
    Witness w = [&]() -> Witness {
      switch (theorem) {
        case 1: return theorem1_witness(phi);
        case 2: return theorem2_witness(phi);
        case 3: return theorem3_witness(phi);
        default: return theorem4_witness(phi);
      }
    }();
    doc.witnesses = {WitnessEntry{theorem, std::move(w)}};
    emit(serialize_document(doc));
    return kExitOk;
  } catch (const ConstructionError& e) {
    emit(construction_error_to_json(e));
    std::cerr << "chaincomm: " << to_string(e.code()) << ": " << e.what() << '\n';
    if (e.is_obstruction()) return kExitObstruction;
    if (e.code() == ErrorCode::InconsistentTrace) return kExitInternal;
    return kExitLimitation;
  }
}

int run_verify(const std::string& path) {
  const auto doc = load(path);
  if (doc.witnesses.empty()) {
    std::cerr << "chaincomm: no witnesses to verify\n";
    emit({{"kind", "verification"}, {"ok", false}, {"results", json::array()}});
    return kExitFail;
  }
  const auto& phi = *doc.endomorphism;
  bool all_ok = true;
  auto results = json::array();
  for (const auto& entry : doc.witnesses) {
    const auto r = std::visit(
        [&](const auto& w) {
          using W = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<W, PointwiseWitness>) return verify_pointwise(phi, w);
          else if constexpr (std::is_same_v<W, CommutatorWitness>) return verify_commutator(phi, w);
          else return verify_homotopy_witness(phi, w);
        },
        entry.witness);
    all_ok = all_ok && r.ok;
    auto j = verification_to_json(r);
    if (entry.theorem) j["theorem"] = *entry.theorem;
    results.push_back(std::move(j));
  }
  emit({{"kind", "verification"}, {"ok", all_ok}, {"results", results}});
  return all_ok ? kExitOk : kExitFail;
}

int run_counterexample(const std::string& name) {
  if (name != "example2") throw UsageError("unknown counterexample '" + name + "'");
  const auto report = example2_search();
  emit(example2_to_json(report));
  return report.matches_published ? kExitOk : kExitFail;
}

FieldSpec parse_field_flag(const std::string& s) {
  if (s == "Q") return FieldSpec::rationals();
  if (s.rfind("Fp:", 0) == 0) {
    try {
      std::size_t used = 0;
      const auto p = std::stoull(s.substr(3), &used);
      if (used == s.size() - 3) return FieldSpec::prime(p);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--field must be Q or Fp:p with p prime, got '" + s + "'");
}

int run_random(std::uint64_t seed, const std::string& field, std::size_t max_dim, std::size_t length,
               const std::string& ensure) {
  const auto f = parse_field_flag(field);
  if (length == 0) throw UsageError("--length must be positive");
  Ensure e = Ensure::None;
  if (ensure == "t1") e = Ensure::Theorem1;
  else if (ensure == "t2") e = Ensure::Theorem2;
  else if (ensure == "t3") e = Ensure::Theorem3;
  else if (ensure == "t4") e = Ensure::Theorem4;
  else if (!ensure.empty()) throw UsageError("--ensure must be one of t1, t2, t3, t4");
  Rng rng(seed);
  auto c = random_complex(rng, f, max_dim, length);
  auto phi = random_endomorphism(rng, c, e);
  emit(serialize_document({c, std::move(phi), {}}));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain endomorphism commutator toolkit"};
  app.require_subcommand(1);

  std::string file = "-";
  int theorem = 0;
  std::string example;
  std::uint64_t seed = 0;
  std::string field;
  std::size_t max_dim = 0, length = 0;
  std::string ensure;

  auto* analyze_cmd = app.add_subcommand("analyze", "Trace report and theorem verdicts");
  analyze_cmd->add_option("file", file, "Complex document ('-' for stdin)");

  auto* witness_cmd = app.add_subcommand("witness", "Construct a witness for one theorem");
  witness_cmd->add_option("file", file, "Complex document ('-' for stdin)");
  witness_cmd->add_option("--theorem", theorem, "1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));

  auto* verify_cmd = app.add_subcommand("verify", "Re-check embedded witnesses");
  verify_cmd->add_option("file", file, "Complex document ('-' for stdin)");

  auto* counter_cmd = app.add_subcommand("counterexample", "Reproduce a published computation");
  counter_cmd->add_option("name", example, "example2")->required();

  auto* random_cmd = app.add_subcommand("random", "Seeded random instance");
  random_cmd->add_option("--seed", seed)->required();
  random_cmd->add_option("--field", field, "Q or Fp:p")->required();
  random_cmd->add_option("--max-dim", max_dim)->required();
  random_cmd->add_option("--length", length)->required();
  random_cmd->add_option("--ensure", ensure, "t1, t2, t3 or t4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cerr << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "chaincomm: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return run_analyze(file);
    if (*witness_cmd) return run_witness(file, theorem);
    if (*verify_cmd) return run_verify(file);
    if (*counter_cmd) return run_counterexample(example);
    if (*random_cmd) return run_random(seed, field, max_dim, length, ensure);
  } catch (const UsageError& e) {
    std::cerr << "chaincomm: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "chaincomm: " << e.what() << '\n';
    emit(violations_to_json(e.violations()));
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "chaincomm: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
