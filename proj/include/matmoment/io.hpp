#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matmoment/errors.hpp"
#include "matmoment/hankel.hpp"
#include "matmoment/matrix.hpp"
#include "matmoment/measure.hpp"
#include "matmoment/recurrence.hpp"
#include "matmoment/sequence.hpp"

namespace matmoment {

using json = nlohmann::json;

/// Per-document tolerance overrides; unset fields fall through to the next
/// source in the chain flag > document > environment > default.
struct ToleranceOverrides {
  std::optional<double> psd_eps;
  std::optional<double> root_eps;
  std::optional<double> residual_eps;

  Tolerance apply(Tolerance base) const {
    if (psd_eps) base.psd_eps = *psd_eps;
    if (root_eps) base.root_eps = *root_eps;
    if (residual_eps) base.residual_eps = *residual_eps;
    return base;
  }

  bool empty() const { return !psd_eps && !root_eps && !residual_eps; }
};

/// Reads MATMOMENT_TOL_PSD / _ROOT / _RESIDUAL, the lowest-priority source.
inline ToleranceOverrides tolerance_overrides_from_env() {
  ToleranceOverrides env;
  auto read = [](const char* name) -> std::optional<double> {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') return std::nullopt;
    char* end = nullptr;
    const double parsed = std::strtod(value, &end);
    if (end == value || !std::isfinite(parsed) || parsed < 0.0) return std::nullopt;
    return parsed;
  };
  env.psd_eps = read("MATMOMENT_TOL_PSD");
  env.root_eps = read("MATMOMENT_TOL_ROOT");
  env.residual_eps = read("MATMOMENT_TOL_RESIDUAL");
  return env;
}

/// Resolves the effective tolerances: defaults, then environment, then the
/// document, then command-line flags.
inline Tolerance resolve_tolerances(const ToleranceOverrides& document,
                                    const ToleranceOverrides& flags) {
  Tolerance tol;
  tol = tolerance_overrides_from_env().apply(tol);
  tol = document.apply(tol);
  tol = flags.apply(tol);
  return tol;
}

/// Validated problem input: either an explicit moment truncation or a
/// recurrence (order, coefficients, initial matrices). Matrices are kept raw;
/// symmetric-mode ingestion symmetrizes (and gates on the asymmetry defect)
/// when the operations run, once tolerances are resolved.
struct ProblemDocument {
  enum class Mode { Sequence, Recurrence };

  Mode mode = Mode::Sequence;
  Eigen::Index dim = 1;
  bool symmetric_mode = true;
  RawMomentSequence moments;                // sequence mode
  std::vector<double> recurrence_coeffs;    // recurrence mode
  RawMomentSequence recurrence_initials;
  ToleranceOverrides tolerances;
  RawMomentSequence riesz_polynomial;       // optional "polynomial" field

  int recurrence_order() const { return static_cast<int>(recurrence_coeffs.size()); }
};

namespace detail {

inline Eigen::MatrixXd json_to_matrix(const json& node, Eigen::Index dim,
                                      const std::string& where) {
  if (!node.is_array() || node.size() != static_cast<std::size_t>(dim)) {
    throw DimensionError(where + " must be a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " array");
  }
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw DimensionError(where + " row " + std::to_string(i) + " must have " +
                           std::to_string(dim) + " entries");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        throw SchemaError(where + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not a number");
      }
      m(i, j) = cell.get<double>();
    }
  }
  return m;
}

inline json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void require_keys(const json& node, const std::vector<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError("unknown field \"" + key + "\" in " + where);
    }
  }
}

inline ToleranceOverrides parse_tolerances(const json& node) {
  require_keys(node, {"psd_eps", "root_eps", "residual_eps"}, "tolerances");
  ToleranceOverrides out;
  auto read = [&](const char* key) -> std::optional<double> {
    if (!node.contains(key)) return std::nullopt;
    if (!node[key].is_number()) throw SchemaError(std::string("tolerances.") + key + " is not a number");
    const double v = node[key].get<double>();
    if (!(v >= 0.0)) throw SchemaError(std::string("tolerances.") + key + " must be nonnegative");
    return v;
  };
  out.psd_eps = read("psd_eps");
  out.root_eps = read("root_eps");
  out.residual_eps = read("residual_eps");
  return out;
}

// Numbers in result documents must be finite; non-finite values indicate a
// numeric failure and must not serialize silently as null.
inline void require_finite(const json& node, const std::string& path) {
  if (node.is_number_float() && !std::isfinite(node.get<double>())) {
    throw ConvergenceFailureError("non-finite value at " + path);
  }
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) require_finite(value, path + "." + key);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      require_finite(node[i], path + "[" + std::to_string(i) + "]");
    }
  }
}

}  // namespace detail

/// Parses and validates a ProblemDocument from JSON text.
inline ProblemDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object()) throw SchemaError("document root must be a JSON object");
  detail::require_keys(root, {"mode", "dim", "symmetric_mode", "moments", "recurrence",
                              "tolerances", "polynomial"},
                       "document");

  ProblemDocument doc;
  if (!root.contains("mode") || !root["mode"].is_string()) {
    throw SchemaError("\"mode\" must be \"sequence\" or \"recurrence\"");
  }
  const std::string mode = root["mode"].get<std::string>();
  if (mode == "sequence") {
    doc.mode = ProblemDocument::Mode::Sequence;
  } else if (mode == "recurrence") {
    doc.mode = ProblemDocument::Mode::Recurrence;
  } else {
    throw SchemaError("\"mode\" must be \"sequence\" or \"recurrence\", got \"" + mode + "\"");
  }

  if (!root.contains("dim") || !root["dim"].is_number_integer() || root["dim"].get<int>() < 1) {
    throw SchemaError("\"dim\" must be a positive integer");
  }
  doc.dim = root["dim"].get<int>();

  if (root.contains("symmetric_mode")) {
    if (!root["symmetric_mode"].is_boolean()) throw SchemaError("\"symmetric_mode\" must be a boolean");
    doc.symmetric_mode = root["symmetric_mode"].get<bool>();
  }

  if (doc.mode == ProblemDocument::Mode::Sequence) {
    if (root.contains("recurrence")) {
      throw SchemaError("sequence mode must not contain a \"recurrence\" block");
    }
    if (!root.contains("moments") || !root["moments"].is_array() || root["moments"].empty()) {
      throw SchemaError("sequence mode needs a nonempty \"moments\" array");
    }
    for (std::size_t k = 0; k < root["moments"].size(); ++k) {
      doc.moments.push_back(
          detail::json_to_matrix(root["moments"][k], doc.dim, "moments[" + std::to_string(k) + "]"));
    }
  } else {
    if (root.contains("moments")) {
      throw SchemaError("recurrence mode must not contain a \"moments\" array");
    }
    if (!root.contains("recurrence") || !root["recurrence"].is_object()) {
      throw SchemaError("recurrence mode needs a \"recurrence\" object");
    }
    const json& rec = root["recurrence"];
    detail::require_keys(rec, {"order", "coeffs", "initials"}, "recurrence");
    if (!rec.contains("order") || !rec["order"].is_number_integer() || rec["order"].get<int>() < 1) {
      throw SchemaError("recurrence.order must be a positive integer");
    }
    const int order = rec["order"].get<int>();
    if (!rec.contains("coeffs") || !rec["coeffs"].is_array() ||
        rec["coeffs"].size() != static_cast<std::size_t>(order)) {
      throw SchemaError("recurrence.coeffs must list exactly " + std::to_string(order) +
                        " numbers");
    }
    for (const json& c : rec["coeffs"]) {
      if (!c.is_number()) throw SchemaError("recurrence.coeffs entries must be numbers");
      doc.recurrence_coeffs.push_back(c.get<double>());
    }
    if (doc.recurrence_coeffs.back() == 0.0) {
      throw SchemaError("the trailing recurrence coefficient a_{r-1} must be nonzero");
    }
    if (!rec.contains("initials") || !rec["initials"].is_array() ||
        rec["initials"].size() != static_cast<std::size_t>(order)) {
      throw SchemaError("recurrence.initials must list exactly " + std::to_string(order) +
                        " matrices");
    }
    for (std::size_t k = 0; k < rec["initials"].size(); ++k) {
      doc.recurrence_initials.push_back(detail::json_to_matrix(
          rec["initials"][k], doc.dim, "recurrence.initials[" + std::to_string(k) + "]"));
    }
  }

  if (root.contains("tolerances")) {
    if (!root["tolerances"].is_object()) throw SchemaError("\"tolerances\" must be an object");
    doc.tolerances = detail::parse_tolerances(root["tolerances"]);
  }

  if (root.contains("polynomial")) {
    if (!root["polynomial"].is_array() || root["polynomial"].empty()) {
      throw SchemaError("\"polynomial\" must be a nonempty array of matrices");
    }
    for (std::size_t k = 0; k < root["polynomial"].size(); ++k) {
      doc.riesz_polynomial.push_back(detail::json_to_matrix(
          root["polynomial"][k], doc.dim, "polynomial[" + std::to_string(k) + "]"));
    }
  }
  return doc;
}

/// Inverse of parse_document (modulo field order).
inline json serialize_document(const ProblemDocument& doc) {
  json root;
  root["mode"] = doc.mode == ProblemDocument::Mode::Sequence ? "sequence" : "recurrence";
  root["dim"] = static_cast<int>(doc.dim);
  root["symmetric_mode"] = doc.symmetric_mode;
  if (doc.mode == ProblemDocument::Mode::Sequence) {
    json moments = json::array();
    for (const auto& m : doc.moments) moments.push_back(detail::matrix_to_json(m));
    root["moments"] = std::move(moments);
  } else {
    json rec;
    rec["order"] = doc.recurrence_order();
    rec["coeffs"] = doc.recurrence_coeffs;
    json initials = json::array();
    for (const auto& m : doc.recurrence_initials) initials.push_back(detail::matrix_to_json(m));
    rec["initials"] = std::move(initials);
    root["recurrence"] = std::move(rec);
  }
  if (!doc.tolerances.empty()) {
    json tols;
    if (doc.tolerances.psd_eps) tols["psd_eps"] = *doc.tolerances.psd_eps;
    if (doc.tolerances.root_eps) tols["root_eps"] = *doc.tolerances.root_eps;
    if (doc.tolerances.residual_eps) tols["residual_eps"] = *doc.tolerances.residual_eps;
    root["tolerances"] = std::move(tols);
  }
  if (!doc.riesz_polynomial.empty()) {
    json poly = json::array();
    for (const auto& m : doc.riesz_polynomial) poly.push_back(detail::matrix_to_json(m));
    root["polynomial"] = std::move(poly);
  }
  return root;
}

namespace detail {

/// Symmetric-mode ingestion: symmetrize every raw matrix, gate on the defect,
/// collect nonzero-defect diagnostics.
inline std::vector<SymmetricMatrix> checked_symmetric(const RawMomentSequence& raw,
                                                      const Tolerance& tol,
                                                      std::vector<std::string>* diagnostics) {
  std::vector<SymmetricMatrix> out;
  out.reserve(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    SymmetricMatrix m = SymmetricMatrix::Checked(raw[k], tol);
    if (m.asymmetry_defect() > 0.0 && diagnostics != nullptr) {
      diagnostics->push_back("matrix " + std::to_string(k) + " symmetrized (defect " +
                             std::to_string(m.asymmetry_defect()) + ")");
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline json verdict_to_json(const MomentVerdict& v) {
  json out;
  out["problem_kind"] = to_string(v.problem_kind);
  out["truncation_order"] = v.truncation_order;
  out["satisfied"] = v.satisfied;
  out["certifies"] = "truncated problem at the reported order only";
  if (v.failing_certificate) {
    json cert;
    cert["matrix"] = v.failing_certificate->matrix_name;
    cert["eigenvalue"] = v.failing_certificate->eigenvalue;
    json vec = json::array();
    for (Eigen::Index i = 0; i < v.failing_certificate->eigenvector.size(); ++i) {
      vec.push_back(v.failing_certificate->eigenvector(i));
    }
    cert["eigenvector"] = std::move(vec);
    out["failing_certificate"] = std::move(cert);
  } else {
    out["failing_certificate"] = nullptr;
  }
  return out;
}

inline json measure_to_json(const AtomicMatrixMeasure& m) {
  json out;
  out["dim"] = static_cast<int>(m.dim());
  out["symmetric_mode"] = m.symmetric_mode();
  json atoms = json::array();
  for (std::size_t i = 0; i < m.atom_count(); ++i) {
    json atom;
    atom["node"] = m.nodes()[i];
    atom["weight"] = matrix_to_json(m.weights()[i]);
    atoms.push_back(std::move(atom));
  }
  out["atoms"] = std::move(atoms);
  return out;
}

inline json polynomial_to_json(const RealPolynomial& p, const std::vector<RootEntry>& roots) {
  json out;
  out["coefficients"] = p.coefficients();
  out["degree"] = p.degree();
  json rts = json::array();
  for (const auto& e : roots) {
    json r;
    r["real"] = e.value.real();
    r["imag"] = e.value.imag();
    r["multiplicity"] = e.multiplicity;
    rts.push_back(std::move(r));
  }
  out["roots"] = std::move(rts);
  return out;
}

inline json tolerances_to_json(const Tolerance& tol) {
  json out;
  out["psd_eps"] = tol.psd_eps;
  out["root_eps"] = tol.root_eps;
  out["residual_eps"] = tol.residual_eps;
  return out;
}

}  // namespace detail

/// Result of one CLI-level operation: the ResultDocument plus the process
/// exit code (0 satisfied, 1 refuted, 2 error; errors surface as exceptions
/// and are mapped to 2 by the caller).
struct RunResult {
  json document;
  int exit_code = 0;
};

/// Builds the symmetric moment sequence an operation needs: explicit moments
/// in sequence mode, a 4r-term extension in recurrence mode.
inline MatrixMomentSequence document_sequence(const ProblemDocument& doc, const Tolerance& tol,
                                              std::vector<std::string>* diagnostics) {
  if (!doc.symmetric_mode) {
    throw SchemaError("this operation requires symmetric_mode = true");
  }
  if (doc.mode == ProblemDocument::Mode::Sequence) {
    return MatrixMomentSequence(detail::checked_symmetric(doc.moments, tol, diagnostics));
  }
  RecurrenceSpec spec(doc.recurrence_coeffs,
                      detail::checked_symmetric(doc.recurrence_initials, tol, diagnostics));
  return extend(spec, 4 * spec.order() - 1);
}

/// Runs one of the three truncated moment checks.
inline RunResult run_check(const ProblemDocument& doc, ProblemKind kind, const Tolerance& tol) {
  std::vector<std::string> diagnostics;
  const MatrixMomentSequence seq = document_sequence(doc, tol, &diagnostics);
  MomentVerdict verdict;
  switch (kind) {
    case ProblemKind::Hamburger: verdict = check_hamburger(seq, tol); break;
    case ProblemKind::Stieltjes: verdict = check_stieltjes(seq, tol); break;
    case ProblemKind::Hausdorff: verdict = check_hausdorff(seq, tol); break;
  }
  for (const auto& note : verdict.boundary_notes) diagnostics.push_back(note);

  RunResult result;
  result.document["verdicts"] = json::object();
  result.document["verdicts"][to_string(kind)] = detail::verdict_to_json(verdict);
  result.document["diagnostics"] = diagnostics;
  result.document["tolerances"] = detail::tolerances_to_json(tol);
  result.exit_code = verdict.satisfied ? 0 : 1;
  detail::require_finite(result.document, "result");
  return result;
}

namespace detail {

inline json report_to_json(const MeasureReport& report, const Tolerance& tol) {
  json out;
  out["outcome"] = to_string(report.outcome);
  out["minimal_polynomial"] = polynomial_to_json(report.minimal_poly, report.root_entries);
  if (report.measure) out["measure"] = measure_to_json(*report.measure);
  json equivalence;
  equivalence["hankel_psd"] = report.hankel_psd;
  equivalence["weights_psd"] = report.all_weights_psd;
  equivalence["numerical_disagreement"] = report.numerical_disagreement;
  out["equivalence"] = std::move(equivalence);
  out["residuals"] = json{{"reconstruction", report.reconstruction_residual}};
  out["per_atom_min_eigenvalue"] = report.per_atom_min_eig;
  if (report.confluent_root) out["confluent_root"] = *report.confluent_root;
  if (report.complex_root) {
    out["complex_root"] = json{{"real", report.complex_root->real()},
                               {"imag", report.complex_root->imag()}};
  }
  if (!report.conditions.empty()) {
    json conds = json::array();
    for (const auto& c : report.conditions) {
      conds.push_back(json{{"name", c.name}, {"psd", c.psd}, {"matrix", matrix_to_json(c.matrix.data())}});
    }
    out["psd_conditions"] = std::move(conds);
  }
  if (report.necessary_bounds_hold) out["necessary_bounds_hold"] = *report.necessary_bounds_hold;
  json diagnostics = json::array();
  for (const auto& w : report.warnings) diagnostics.push_back(w);
  if (report.numerical_disagreement) {
    diagnostics.push_back("NumericalDisagreement: Hankel and weight verdicts differ (margin " +
                          std::to_string(report.boundary_margin) + ")");
  }
  out["diagnostics"] = std::move(diagnostics);
  out["tolerances"] = tolerances_to_json(tol);
  return out;
}

}  // namespace detail

/// Full decision pipeline: minimal polynomial, roots, measure recovery (or
/// the structured repeated/complex-roots outcome), both sides of the
/// Hankel/weights equivalence, reconstruction residual.
inline RunResult run_solve(const ProblemDocument& doc, const Tolerance& tol) {
  RunResult result;
  std::vector<std::string> diagnostics;

  if (doc.symmetric_mode) {
    MeasureReport report = [&] {
      if (doc.mode == ProblemDocument::Mode::Recurrence) {
        RecurrenceSpec spec(doc.recurrence_coeffs,
                            detail::checked_symmetric(doc.recurrence_initials, tol, &diagnostics));
        return decide_truncated(spec, tol);
      }
      return decide_sequence(
          MatrixMomentSequence(detail::checked_symmetric(doc.moments, tol, &diagnostics)), tol);
    }();
    result.document = detail::report_to_json(report, tol);
    for (std::size_t i = 0; i < diagnostics.size(); ++i) {
      result.document["diagnostics"].insert(result.document["diagnostics"].begin() + i,
                                            diagnostics[i]);
    }
    result.exit_code =
        (report.outcome == MeasureOutcome::Recovered && report.all_weights_psd) ? 0 : 1;
    detail::require_finite(result.document, "result");
    return result;
  }

  // Raw mode: entrywise recovery only, no positivity semantics.
  const RawMomentSequence seq = doc.mode == ProblemDocument::Mode::Recurrence
                                    ? extend_raw(doc.recurrence_coeffs, doc.recurrence_initials,
                                                 4 * doc.recurrence_order() - 1)
                                    : doc.moments;
  const RealPolynomial p_s = minimal_polynomial(seq, tol);
  std::vector<RootEntry> p_s_roots;
  if (p_s.degree() >= 1) {
    const RootMultiset rm = roots(p_s, tol);
    p_s_roots = rm.entries();
  }
  result.document["minimal_polynomial"] = detail::polynomial_to_json(p_s, p_s_roots);
  try {
    const AtomicMatrixMeasure measure =
        p_s.degree() >= 1 ? recover_measure_raw(seq, p_s, tol)
                          : AtomicMatrixMeasure(seq.front().rows(), false, {}, {});
    result.document["outcome"] = to_string(MeasureOutcome::Recovered);
    result.document["measure"] = detail::measure_to_json(measure);
    result.document["residuals"] =
        json{{"reconstruction", reconstruction_residual(measure, seq)}};
    result.exit_code = 0;
  } catch (const RepeatedRootsError& e) {
    result.document["outcome"] = to_string(MeasureOutcome::RepeatedRoots);
    result.document["confluent_root"] = e.root();
    result.exit_code = 1;
  } catch (const ComplexRootsError& e) {
    result.document["outcome"] = to_string(MeasureOutcome::ComplexRoots);
    result.document["complex_root"] =
        json{{"real", e.root().real()}, {"imag", e.root().imag()}};
    result.exit_code = 1;
  }
  result.document["diagnostics"] =
      json::array({"raw mode: no positivity semantics, weights are not symmetrized"});
  result.document["tolerances"] = detail::tolerances_to_json(tol);
  detail::require_finite(result.document, "result");
  return result;
}

/// Parses an AtomicMatrixMeasure from a measure document (or from the
/// "measure" field of a solve ResultDocument fed back in).
inline AtomicMatrixMeasure parse_measure_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object()) throw SchemaError("measure document root must be a JSON object");
  const json& node = root.contains("measure") ? root["measure"] : root;
  if (!node.is_object() || !node.contains("dim") || !node.contains("atoms")) {
    throw SchemaError("measure document needs \"dim\" and \"atoms\"");
  }
  if (!node["dim"].is_number_integer() || node["dim"].get<int>() < 1) {
    throw SchemaError("measure \"dim\" must be a positive integer");
  }
  const Eigen::Index dim = node["dim"].get<int>();
  bool symmetric_mode = true;
  if (node.contains("symmetric_mode")) {
    if (!node["symmetric_mode"].is_boolean()) throw SchemaError("symmetric_mode must be a boolean");
    symmetric_mode = node["symmetric_mode"].get<bool>();
  }
  if (!node["atoms"].is_array()) throw SchemaError("measure \"atoms\" must be an array");
  std::vector<double> nodes;
  std::vector<Eigen::MatrixXd> weights;
  for (std::size_t i = 0; i < node["atoms"].size(); ++i) {
    const json& atom = node["atoms"][i];
    if (!atom.is_object() || !atom.contains("node") || !atom.contains("weight") ||
        !atom["node"].is_number()) {
      throw SchemaError("each atom needs a numeric \"node\" and a \"weight\" matrix");
    }
    nodes.push_back(atom["node"].get<double>());
    weights.push_back(
        detail::json_to_matrix(atom["weight"], dim, "atoms[" + std::to_string(i) + "].weight"));
  }
  return AtomicMatrixMeasure(dim, symmetric_mode, std::move(nodes), std::move(weights));
}

/// Emits S_0..S_n of a measure as a sequence-mode ProblemDocument, so the
/// output can be piped straight back into check or solve.
inline RunResult run_reconstruct(const AtomicMatrixMeasure& measure, int order) {
  const RawMomentSequence seq = reconstruct_raw(measure, order);
  RunResult result;
  result.document["mode"] = "sequence";
  result.document["dim"] = static_cast<int>(measure.dim());
  result.document["symmetric_mode"] = measure.symmetric_mode();
  json moments = json::array();
  for (const auto& m : seq) moments.push_back(detail::matrix_to_json(m));
  result.document["moments"] = std::move(moments);
  result.exit_code = 0;
  detail::require_finite(result.document, "result");
  return result;
}

/// Evaluates the Riesz functional of the document's sequence on the
/// document's "polynomial" coefficient list.
inline RunResult run_riesz(const ProblemDocument& doc, const Tolerance& tol) {
  if (doc.riesz_polynomial.empty()) {
    throw SchemaError("riesz evaluation needs a \"polynomial\" field");
  }
  if (!doc.symmetric_mode) {
    throw SchemaError("riesz evaluation requires symmetric_mode = true");
  }
  std::vector<std::string> diagnostics;
  MatrixMomentSequence seq = [&] {
    if (doc.mode == ProblemDocument::Mode::Sequence) {
      return document_sequence(doc, tol, &diagnostics);
    }
    // Extend far enough for the polynomial degree if 4r terms are too few.
    RecurrenceSpec spec(doc.recurrence_coeffs,
                        detail::checked_symmetric(doc.recurrence_initials, tol, &diagnostics));
    const int needed = static_cast<int>(doc.riesz_polynomial.size()) - 1;
    return extend(spec, std::max(4 * spec.order() - 1, needed));
  }();
  std::vector<SymmetricMatrix> coeffs;
  coeffs.reserve(doc.riesz_polynomial.size());
  for (const auto& m : doc.riesz_polynomial) {
    coeffs.push_back(SymmetricMatrix::Checked(m, tol));
  }
  RunResult result;
  result.document["riesz_value"] = riesz_eval(seq, coeffs);
  result.document["diagnostics"] = diagnostics;
  result.document["tolerances"] = detail::tolerances_to_json(tol);
  result.exit_code = 0;
  detail::require_finite(result.document, "result");
  return result;
}

/// Maps a library error to the machine-readable error object emitted on
/// stdout when a command exits with code 2.
inline json error_to_json(const Error& e) {
  json out;
  out["error"] = json{{"code", to_string(e.code())}, {"message", e.what()}};
  return out;
}

}  // namespace matmoment
