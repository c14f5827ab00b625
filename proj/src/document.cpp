#include "chaincomm/document.hpp"

#include <limits>
#include <regex>

namespace chaincomm {

namespace {

std::string summarize(const std::vector<SchemaViolation>& v) {
  if (v.empty()) return "schema violation";
  auto s = v.front().code + " at '" + v.front().path + "': " + v.front().message;
  if (v.size() > 1) s += " (+" + std::to_string(v.size() - 1) + " more)";
  return s;
}

// Stops the parse; violations gathered so far travel with it.
struct Abort {};

class Parser {
 public:
  std::vector<SchemaViolation> violations;

  void add(std::string path, std::string code, std::string message) {
    violations.push_back({std::move(path), std::move(code), std::move(message)});
  }
  [[noreturn]] void fatal(std::string path, std::string code, std::string message) {
    add(std::move(path), std::move(code), std::move(message));
    throw Abort{};
  }

  const json& member(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fatal(path, "shape_mismatch", "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fatal(path + "/" + key, "missing_field", std::string("required field '") + key + "' is absent");
    return *it;
  }

  std::int64_t integer(const json& j, const std::string& path) {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        fatal(path, "out_of_range", "integer too large");
      return j.get<std::int64_t>();
    }
    fatal(path, "malformed_number", "expected an integer");
  }

  FieldSpec field(const json& j, const std::string& path) {
    const auto& kind = member(j, path, "kind");
    if (kind == "Q") return FieldSpec::rationals();
    if (kind == "Fp") {
      const auto p = integer(member(j, path, "p"), path + "/p");
      if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)) || static_cast<std::uint64_t>(p) >= (1ULL << 32))
        fatal(path + "/p", "bad_field", "p must be a prime below 2^32");
      return FieldSpec::prime(static_cast<std::uint64_t>(p));
    }
    fatal(path + "/kind", "bad_field", "field kind must be \"Q\" or \"Fp\"");
  }

  // Records a violation and returns nullopt for a bad entry, so that one
  // document reports all of its bad numbers at once.
  std::optional<Scalar> scalar(const FieldSpec& f, const json& j, const std::string& path) {
    if (f.is_finite()) {
      if (!j.is_number_integer()) {
        add(path, "malformed_number", "F_p entries are integers");
        return std::nullopt;
      }
      const bool negative = j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0;
      if (negative || j.get<std::uint64_t>() >= f.modulus()) {
        add(path, "out_of_range", "entry must lie in 0.." + std::to_string(f.modulus() - 1));
        return std::nullopt;
      }
      return Scalar::residue(static_cast<std::uint32_t>(j.get<std::uint64_t>()), static_cast<std::uint32_t>(f.modulus()));
    }
    if (j.is_number_integer()) {
      if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        add(path, "out_of_range", "integer too large; use a string");
        return std::nullopt;
      }
      return Scalar::from_int(f, j.get<std::int64_t>());
    }
    if (!j.is_string()) {
      add(path, "malformed_number", "rational entries are strings \"a/b\" or \"a\"");
      return std::nullopt;
    }
    static const std::regex pattern("-?[0-9]+(/-?[0-9]+)?");
    const auto& text = j.get_ref<const std::string&>();
    if (!std::regex_match(text, pattern)) {
      add(path, "malformed_number", "'" + text + "' is not of the form a/b");
      return std::nullopt;
    }
    mpq_class q;
    try {
      q = mpq_class(text, 10);
    } catch (const std::invalid_argument&) {
      add(path, "malformed_number", "'" + text + "' is not of the form a/b");
      return std::nullopt;
    }
    if (q.get_den() == 0) {
      add(path, "malformed_number", "zero denominator");
      return std::nullopt;
    }
    q.canonicalize();
    const auto canonical = Scalar::from_rational(q);
    if (canonical.to_string() != text) {
      add(path, "not_lowest_terms", "'" + text + "' is not in lowest terms; write \"" + canonical.to_string() + "\"");
      return std::nullopt;
    }
    return canonical;
  }

  std::optional<Matrix> matrix(const FieldSpec& f, const json& j, const std::string& path, std::size_t rows,
                               std::size_t cols) {
    const auto shape = std::to_string(rows) + " x " + std::to_string(cols);
    if (!j.is_array() || j.size() != rows) {
      add(path, "shape_mismatch", "expected a " + shape + " matrix");
      return std::nullopt;
    }
    std::vector<Scalar> entries;
    bool ok = true;
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& row = j[r];
      const auto rpath = path + "/" + std::to_string(r);
      if (!row.is_array() || row.size() != cols) {
        add(rpath, "shape_mismatch", "expected a row of length " + std::to_string(cols) + " (" + shape + " matrix)");
        ok = false;
        continue;
      }
      for (std::size_t c = 0; c < cols; ++c) {
        auto s = scalar(f, row[c], rpath + "/" + std::to_string(c));
        if (s) entries.push_back(std::move(*s));
        else ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return Matrix(f, rows, cols, std::move(entries));
  }

  // One matrix per window degree; shapes from `shape(i)`.
  template <class Shape>
  std::optional<std::vector<Matrix>> graded(const ChainComplex& c, const json& j, const std::string& path, Shape shape) {
    const auto n = c.dims().size();
    if (!j.is_array() || j.size() != n) fatal(path, "shape_mismatch", "expected one matrix per degree (" + std::to_string(n) + ")");
    std::vector<Matrix> out;
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) {
      const int i = c.lo() + static_cast<int>(k);
      const auto [rows, cols] = shape(i);
      auto m = matrix(c.field(), j[k], path + "/" + std::to_string(k), rows, cols);
      if (m) out.push_back(std::move(*m));
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<ChainEndomorphism> endomorphism(const ComplexPtr& c, const json& j, const std::string& path) {
    auto maps = graded(*c, j, path, [&](int i) { return std::pair{c->dim(i), c->dim(i)}; });
    if (!maps) return std::nullopt;
    return ChainEndomorphism(c, std::move(*maps));
  }

  std::optional<Homotopy> homotopy(const ComplexPtr& c, const json& j, const std::string& path) {
    auto maps = graded(*c, j, path, [&](int i) { return std::pair{c->dim(i - 1), c->dim(i)}; });
    if (!maps) return std::nullopt;
    return Homotopy(c, std::move(*maps));
  }

  std::optional<CommutatorWitness> commutator_witness(const ComplexPtr& c, const json& j, const std::string& path) {
    auto a = endomorphism(c, member(j, path, "alpha"), path + "/alpha");
    auto b = endomorphism(c, member(j, path, "beta"), path + "/beta");
    if (!a || !b) return std::nullopt;
    return CommutatorWitness{std::move(*a), std::move(*b)};
  }

  std::optional<PointwiseWitness> pointwise_witness(const ComplexPtr& c, const json& j, const std::string& path) {
    const auto& pairs = member(j, path, "pairs");
    const auto ppath = path + "/pairs";
    const auto n = c->dims().size();
    if (!pairs.is_array() || pairs.size() != n)
      fatal(ppath, "shape_mismatch", "expected one pair per degree (" + std::to_string(n) + ")");
    PointwiseWitness w{c->lo(), {}};
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) {
      const auto d = c->dim(c->lo() + static_cast<int>(k));
      const auto kpath = ppath + "/" + std::to_string(k);
      auto a = matrix(c->field(), member(pairs[k], kpath, "a"), kpath + "/a", d, d);
      auto b = matrix(c->field(), member(pairs[k], kpath, "b"), kpath + "/b", d, d);
      if (a && b) w.pairs.push_back({std::move(*a), std::move(*b)});
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return w;
  }

  std::optional<Witness> witness(const ComplexPtr& c, const json& j, const std::string& path, bool nested) {
    const auto& kind = member(j, path, "kind");
    if (kind == "pointwise") {
      auto w = pointwise_witness(c, j, path);
      if (!w) return std::nullopt;
      return Witness(std::move(*w));
    }
    if (kind == "commutator") {
      auto w = commutator_witness(c, j, path);
      if (!w) return std::nullopt;
      return Witness(std::move(*w));
    }
    if (kind == "homotopy" && !nested) {
      auto s = homotopy(c, member(j, path, "homotopy"), path + "/homotopy");
      auto r = witness(c, member(j, path, "residual"), path + "/residual", true);
      if (!s || !r) return std::nullopt;
      if (auto* cw = std::get_if<CommutatorWitness>(&*r)) return Witness(HomotopyWitness{std::move(*s), std::move(*cw)});
      return Witness(HomotopyWitness{std::move(*s), std::get<PointwiseWitness>(std::move(*r))});
    }
    fatal(path + "/kind", "bad_witness",
          nested ? "residual kind must be \"pointwise\" or \"commutator\""
                 : "witness kind must be \"pointwise\", \"commutator\" or \"homotopy\"");
  }

  Document document(const json& j) {
    if (!j.is_object()) fatal("", "shape_mismatch", "document must be an object");
    const auto& version = member(j, "", "format_version");
    if (version != kFormatVersion) fatal("/format_version", "bad_format_version", "format_version must be \"1\"");
    const auto f = field(member(j, "", "field"), "/field");
    const auto lo = integer(member(j, "", "lo"), "/lo");
    const auto hi = integer(member(j, "", "hi"), "/hi");
    if (lo < std::numeric_limits<int>::min() / 2 || hi > std::numeric_limits<int>::max() / 2)
      fatal("/lo", "out_of_range", "window bounds too large");
    if (hi < lo) fatal("/hi", "shape_mismatch", "hi must be at least lo");
    const auto length = static_cast<std::size_t>(hi - lo + 1);

    const auto& jdims = member(j, "", "dims");
    if (!jdims.is_array() || jdims.size() != length)
      fatal("/dims", "shape_mismatch", "expected hi - lo + 1 = " + std::to_string(length) + " dimensions");
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < length; ++k) {
      const auto path = "/dims/" + std::to_string(k);
      const auto d = integer(jdims[k], path);
      if (d < 0 || d > 4096) fatal(path, "out_of_range", "dimension must lie in 0..4096");
      dims.push_back(static_cast<std::size_t>(d));
    }

    const auto& jd = member(j, "", "differentials");
    if (!jd.is_array() || jd.size() != length - 1)
      fatal("/differentials", "shape_mismatch", "expected hi - lo = " + std::to_string(length - 1) + " differentials");
    std::vector<Matrix> diffs;
    bool ok = true;
    for (std::size_t k = 0; k + 1 < length; ++k) {
      auto m = matrix(f, jd[k], "/differentials/" + std::to_string(k), dims[k + 1], dims[k]);
      if (m) diffs.push_back(std::move(*m));
      else ok = false;
    }
    if (!ok) throw Abort{};
    auto c = std::make_shared<const ChainComplex>(f, static_cast<int>(lo), dims, std::move(diffs));
    for (const auto& v : validate_complex(*c))
      add("/differentials/" + std::to_string(v.degree - c->lo()), "d_squared_nonzero", v.detail);
    if (!violations.empty()) throw Abort{};

    Document doc{c, std::nullopt, {}};
    if (auto it = j.find("endomorphism"); it != j.end()) {
      doc.endomorphism = endomorphism(c, *it, "/endomorphism");
      if (doc.endomorphism)
        for (const auto& v : validate_chain_map(*doc.endomorphism))
          add("/endomorphism/" + std::to_string(v.degree - c->lo()), "not_chain_map", v.identity + ": " + v.detail);
    }
    if (auto it = j.find("witnesses"); it != j.end()) {
      if (!j.contains("endomorphism")) fatal("/endomorphism", "missing_field", "witnesses need an endomorphism");
      if (!it->is_array()) fatal("/witnesses", "shape_mismatch", "witnesses must be an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const auto path = "/witnesses/" + std::to_string(k);
        const auto& jw = (*it)[k];
        std::optional<int> theorem;
        if (jw.is_object() && jw.contains("theorem")) {
          const auto t = integer(jw["theorem"], path + "/theorem");
          if (t < 1 || t > 4) fatal(path + "/theorem", "bad_witness", "theorem must be 1..4");
          theorem = static_cast<int>(t);
        }
        auto w = witness(c, jw, path, false);
        if (w) doc.witnesses.push_back({theorem, std::move(*w)});
      }
    }
    if (!violations.empty()) throw Abort{};
    return doc;
  }
};

json maps_to_json(const std::vector<Matrix>& maps) {
  auto out = json::array();
  for (const auto& m : maps) out.push_back(matrix_to_json(m));
  return out;
}

json residual_to_json(const PointwiseWitness& w) {
  auto pairs = json::array();
  for (const auto& p : w.pairs) pairs.push_back({{"a", matrix_to_json(p.p)}, {"b", matrix_to_json(p.q)}});
  return {{"kind", "pointwise"}, {"pairs", pairs}};
}

json residual_to_json(const CommutatorWitness& w) {
  return {{"kind", "commutator"}, {"alpha", maps_to_json(w.alpha.maps())}, {"beta", maps_to_json(w.beta.maps())}};
}

json residual_to_json(const HomotopyWitness& w) {
  json residual = std::visit([](const auto& r) { return residual_to_json(r); }, w.residual);
  return {{"kind", "homotopy"}, {"homotopy", maps_to_json(w.homotopy.maps())}, {"residual", residual}};
}

json scalars_to_json(const std::vector<Scalar>& v) {
  auto out = json::array();
  for (const auto& s : v) out.push_back(scalar_to_json(s));
  return out;
}

}  // namespace

SchemaError::SchemaError(std::vector<SchemaViolation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

Document parse_document(const json& j) {
  Parser p;
  try {
    return p.document(j);
  } catch (const Abort&) {
    throw SchemaError(std::move(p.violations));
  }
}

Document parse_document_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError({{"", "malformed_json", e.what()}});
  }
  return parse_document(j);
}

json scalar_to_json(const Scalar& s) {
  if (s.field().is_finite()) return s.residue_value();
  return s.to_string();
}

json matrix_to_json(const Matrix& m) {
  auto out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json field_to_json(const FieldSpec& f) {
  if (f.is_finite()) return {{"kind", "Fp"}, {"p", f.modulus()}};
  return {{"kind", "Q"}};
}

json witness_to_json(const WitnessEntry& w) {
  json out = std::visit([](const auto& x) { return residual_to_json(x); }, w.witness);
  if (w.theorem) out["theorem"] = *w.theorem;
  return out;
}

json serialize_document(const Document& d) {
  const auto& c = *d.complex;
  json out = {{"format_version", kFormatVersion},
              {"field", field_to_json(c.field())},
              {"lo", c.lo()},
              {"hi", c.hi()},
              {"dims", c.dims()},
              {"differentials", maps_to_json(c.differentials())}};
  if (d.endomorphism) out["endomorphism"] = maps_to_json(d.endomorphism->maps());
  if (!d.witnesses.empty()) {
    auto ws = json::array();
    for (const auto& w : d.witnesses) ws.push_back(witness_to_json(w));
    out["witnesses"] = ws;
  }
  return out;
}

json violations_to_json(const std::vector<SchemaViolation>& v) {
  auto list = json::array();
  for (const auto& x : v) list.push_back({{"path", x.path}, {"code", x.code}, {"message", x.message}});
  return {{"kind", "schema_error"}, {"violations", list}};
}

json analysis_to_json(const Analysis& a) {
  const auto& r = a.report;
  auto st = json::array();
  for (const auto& s : r.stretch_traces)
    st.push_back({{"start", s.stretch.start},
                  {"end", s.stretch.end},
                  {"trace", scalar_to_json(s.trace)},
                  {"cohomology_trace", scalar_to_json(s.cohomology_trace)}});
  auto verdicts = json::array();
  for (const auto& v : a.verdicts)
    verdicts.push_back({{"theorem", v.theorem},
                        {"condition_holds", v.condition_holds},
                        {"construction_available", v.construction_available},
                        {"note", v.note}});
  return {{"kind", "analysis"},
          {"lo", r.lo},
          {"traces", scalars_to_json(r.traces)},
          {"cohomology_traces", scalars_to_json(r.cohomology_traces)},
          {"stretches", st},
          {"quasi_bounded", r.quasi_bounded},
          {"conditions",
           {{"pointwise_traceless", r.pointwise_traceless},
            {"commutator_condition", r.commutator_condition},
            {"cohomology_traceless", r.cohomology_traceless},
            {"stretch_sums_vanish", r.stretch_sums_vanish}}},
          {"verdicts", verdicts}};
}

json example2_to_json(const Example2Report& r) {
  auto pairs = json::array();
  for (const auto& [p, s] : r.admissible_pairs) pairs.push_back({{"p", matrix_to_json(p)}, {"s", matrix_to_json(s)}});
  auto qs = json::array();
  for (const auto& [p, list] : r.q_candidates) qs.push_back({{"p", matrix_to_json(p)}, {"q", maps_to_json(list)}});
  return {{"kind", "example2"},
          {"field", field_to_json(FieldSpec::prime(2))},
          {"commutants_m", maps_to_json(r.commutants_m)},
          {"commutants_n", maps_to_json(r.commutants_n)},
          {"admissible_pairs", pairs},
          {"q_candidates", qs},
          {"q_pair_trials", r.q_pair_trials},
          {"q_pair_successes", r.q_pair_successes},
          {"matches_published", r.matches_published}};
}

json construction_error_to_json(const ConstructionError& e) {
  json out = {{"kind", e.is_obstruction() ? "obstruction" : "limitation"},
              {"code", to_string(e.code())},
              {"message", e.what()}};
  if (e.degree()) out["degree"] = *e.degree();
  if (e.stretch()) out["stretch"] = {{"start", e.stretch()->start}, {"end", e.stretch()->end}};
  if (e.trace_kind()) out["trace_kind"] = *e.trace_kind() == TraceKind::Degreewise ? "degreewise" : "cohomology";
  return out;
}

json verification_to_json(const VerificationResult& r) {
  auto list = json::array();
  for (const auto& v : r.violations)
    list.push_back({{"location", v.location}, {"identity", v.identity}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  return {{"ok", r.ok}, {"violations", list}};
}

}  // namespace chaincomm
