#include "sicq/io.hpp"

#include <fstream>
#include <sstream>

#include "sicq/errors.hpp"

namespace sicq::io {

namespace {

std::size_t get_dim(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() <= 0) {
    throw ValidationError("document needs a positive integer \"dim\"");
  }
  return j["dim"].get<std::size_t>();
}

const Json& get_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ValidationError(std::string("document needs an array \"") + key + "\"");
  return j[key];
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json provenance_to_json(const Provenance& prov) {
  if (const auto* s = std::get_if<SearchedProvenance>(&prov)) {
    return {{"kind", "searched"}, {"seed", s->seed},  {"iterations", s->iterations}, {"residual", s->residual},
            {"mode", to_string(s->mode)}, {"seeds_tried", s->seeds_tried}};
  }
  return {{"kind", "analytic"}};
}

Provenance provenance_from_json(const Json& j) {
  if (!j.is_object() || j.value("kind", "") != "searched") return AnalyticProvenance{};
  SearchedProvenance s;
  s.seed = j.value("seed", std::uint64_t{0});
  s.iterations = j.value("iterations", std::size_t{0});
  s.residual = j.value("residual", 0.0);
  s.mode = j.value("mode", "") == "weyl_heisenberg" ? SearchMode::weyl_heisenberg : SearchMode::exact;
  s.seeds_tried = j.value("seeds_tried", std::size_t{0});
  return s;
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": malformed JSON at byte " + std::to_string(e.byte_offset()), e.byte_offset());
  }
}

Json rational_to_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return to_string(r);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v[k]));
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw DimensionError("matrix must have " + std::to_string(dim) + " rows");
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != dim) throw DimensionError("matrix rows must have " + std::to_string(dim) + " entries");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

ComplexVector vector_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw DimensionError("vector must have " + std::to_string(dim) + " entries");
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) v[static_cast<Eigen::Index>(k)] = complex_from_json(j[k]);
  return v;
}

Json operator_to_json(const ComplexMatrix& m) { return {{"dim", m.rows()}, {"matrix", matrix_to_json(m)}}; }

ComplexMatrix operator_from_json(const Json& j) {
  const std::size_t dim = get_dim(j);
  return matrix_from_json(get_array(j, "matrix"), dim);
}

Json povm_to_json(const Povm& povm) {
  Json effects = Json::array();
  for (const auto& e : povm.effects()) effects.push_back(matrix_to_json(e));
  return {{"dim", povm.dim()}, {"effects", std::move(effects)}};
}

Povm povm_from_json(const Json& j, double tol) {
  const std::size_t dim = get_dim(j);
  std::vector<ComplexMatrix> effects;
  for (const auto& e : get_array(j, "effects")) effects.push_back(matrix_from_json(e, dim));
  return Povm::from_effects(std::move(effects), tol);
}

Json frame_to_json(const SicFrame& frame) {
  Json out = {{"dim", frame.dim()}, {"provenance", provenance_to_json(frame.provenance())}};
  Json projectors = Json::array();
  for (const auto& p : frame.projectors()) projectors.push_back(matrix_to_json(p));
  out["projectors"] = std::move(projectors);
  if (frame.vectors()) {
    Json vectors = Json::array();
    for (const auto& v : *frame.vectors()) vectors.push_back(vector_to_json(v));
    out["vectors"] = std::move(vectors);
  }
  return out;
}

SicFrame frame_from_json(const Json& j) {
  const std::size_t dim = get_dim(j);
  const Provenance prov = provenance_from_json(j.value("provenance", Json::object()));
  if (j.contains("projectors")) {
    std::vector<ComplexMatrix> projectors;
    for (const auto& p : get_array(j, "projectors")) projectors.push_back(matrix_from_json(p, dim));
    return SicFrame::from_projectors(dim, std::move(projectors), prov);
  }
  std::vector<ComplexVector> vectors;
  for (const auto& v : get_array(j, "vectors")) vectors.push_back(vector_from_json(v, dim));
  if (vectors.size() != dim * dim) throw DimensionError("frame needs d^2 vectors");
  return SicFrame::from_vectors(std::move(vectors), prov);
}

Json mub_to_json(const MubFrame& mub) {
  Json projectors = Json::array();
  for (const auto& p : mub.projectors()) projectors.push_back(matrix_to_json(p));
  Json vectors = Json::array();
  for (const auto& v : mub.vectors()) vectors.push_back(vector_to_json(v));
  return {{"dim", mub.dim()}, {"bases", mub.dim() + 1}, {"projectors", std::move(projectors)},
          {"vectors", std::move(vectors)}};
}

Json prob_to_json(const ProbVector& p) { return {{"n", p.size()}, {"p", p.to_vector()}}; }

ProbVector prob_from_json(const Json& j, double tol) {
  if (!j.is_object() || !j.contains("p") || !j["p"].is_array()) throw ValidationError("document needs an array \"p\"");
  std::vector<double> values;
  for (const auto& x : j["p"]) {
    if (!x.is_number()) throw ValidationError("probabilities must be numbers");
    values.push_back(x.get<double>());
  }
  if (j.contains("n") && (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() != values.size())) {
    throw DimensionError("\"n\" does not match the length of \"p\"");
  }
  return ProbVector::from_values(std::span<const double>(values), tol);
}

}  // namespace sicq::io
