#include "torsionlab/twisted_complex.hpp"

#include "torsionlab/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <set>

namespace torsionlab {

using nlohmann::json;

namespace {

constexpr double kOrthogonalityTol = 1e-12;
constexpr double kChainTol = 1e-12;

void check_orthogonal(const Matrix& g, int index) {
  const Matrix defect = g.transpose() * g - Matrix::Identity(g.cols(), g.cols());
  if (max_abs(defect) >= kOrthogonalityTol)
    throw Error(ErrorCode::BadRepresentation,
                "generator " + std::to_string(index) + " is not orthogonal (defect " +
                    std::to_string(max_abs(defect)) + ")");
}

Matrix block_rotation(int rank, double angle) {
  if (rank == 1) {
    const double c = std::cos(angle);
    if (std::abs(std::abs(c) - 1.0) > 1e-12)
      throw Error(ErrorCode::BadParameter,
                  "rank-1 holonomy must be 0 or pi (O(1) = {+1,-1})");
    Matrix m(1, 1);
    m(0, 0) = c > 0 ? 1.0 : -1.0;
    return m;
  }
  if (rank <= 0 || rank % 2 != 0)
    throw Error(ErrorCode::BadParameter, "preset rank must be 1 or even");
  Matrix m = Matrix::Zero(rank, rank);
  for (int b = 0; b < rank; b += 2) m.block(b, b, 2, 2) = rotation2(angle);
  return m;
}

void check_angle(double angle, const char* name) {
  if (!(angle >= 0.0 && angle < 2.0 * std::numbers::pi))
    throw Error(ErrorCode::BadParameter, std::string(name) + " must lie in [0, 2pi)");
}

json reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::ParseError, where + " must be an object");
  std::set<std::string> keys(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!keys.count(it.key()))
      throw Error(ErrorCode::ParseError, "unknown field '" + it.key() + "' in " + where);
  for (const char* k : allowed)
    if (!obj.contains(k))
      throw Error(ErrorCode::ParseError, "missing field '" + std::string(k) + "' in " + where);
  return obj;
}

template <class T>
T get_as(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, where + ": " + e.what());
  }
}

}  // namespace

Matrix rotation2(double angle) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

// ---------------------------------------------------------------------------
// Representation

Representation::Representation(int rank, std::vector<Matrix> generator_images)
    : rank_(rank), images_(std::move(generator_images)) {
  if (rank_ <= 0) throw Error(ErrorCode::BadRepresentation, "rank must be positive");
  for (size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].rows() != rank_ || images_[i].cols() != rank_)
      throw Error(ErrorCode::BadRepresentation,
                  "generator " + std::to_string(i) + " image has wrong shape");
    check_orthogonal(images_[i], static_cast<int>(i));
  }
}

Representation Representation::trivial(int rank, int generators) {
  return Representation(rank, std::vector<Matrix>(static_cast<size_t>(generators),
                                                  Matrix::Identity(rank, rank)));
}

Matrix Representation::evaluate(const GroupWord& word) const {
  Matrix out = Matrix::Identity(rank_, rank_);
  for (const Letter& l : word) {
    if (l.generator < 0 || l.generator >= generator_count())
      throw Error(ErrorCode::BadRepresentation,
                  "generator index " + std::to_string(l.generator) + " out of range");
    if (l.exponent == 1)
      out = out * images_[static_cast<size_t>(l.generator)];
    else if (l.exponent == -1)
      out = out * images_[static_cast<size_t>(l.generator)].transpose();
    else
      throw Error(ErrorCode::BadRepresentation, "word exponents must be +1 or -1");
  }
  return out;
}

// ---------------------------------------------------------------------------
// TwistedComplex

TwistedComplex::TwistedComplex(int rank, std::vector<int> cells_per_degree,
                               std::vector<Matrix> boundaries)
    : rank_(rank), cells_(std::move(cells_per_degree)), boundary_(std::move(boundaries)) {
  if (cells_.empty()) throw Error(ErrorCode::ShapeMismatch, "complex needs at least degree 0");
  if (boundary_.size() == cells_.size() - 1) boundary_.insert(boundary_.begin(), Matrix());
  if (boundary_.size() != cells_.size())
    throw Error(ErrorCode::ShapeMismatch, "one boundary matrix per degree 1..n expected");
  boundary_[0] = Matrix::Zero(0, chain_dim(0));

  const ValidationReport report = validate(*this);
  if (!report.shapes_chain)
    throw Error(ErrorCode::ShapeMismatch, "boundary matrix shapes do not chain");
  if (!report.flagged_degrees.empty())
    throw Error(ErrorCode::NonChainComplex,
                "d_{k-1} d_k != 0 at degree k = " + std::to_string(report.flagged_degrees.front()) +
                    " (residual " + std::to_string(report.max_residual) + ")");
}

int TwistedComplex::chain_dim(int k) const {
  if (k < 0 || k > dimension()) return 0;
  return rank_ * cells_[static_cast<size_t>(k)];
}

Matrix TwistedComplex::boundary(int k) const {
  if (k <= 0) return Matrix::Zero(0, chain_dim(0) * (k == 0));
  if (k > dimension()) return Matrix::Zero(chain_dim(k - 1), 0);
  return boundary_[static_cast<size_t>(k)];
}

TwistedComplex build_twisted_boundary(const CellStructure& cells, const Representation& rho) {
  const int n = cells.dimension;
  if (n < 0 || cells.cells_per_degree.size() != static_cast<size_t>(n + 1))
    throw Error(ErrorCode::ShapeMismatch, "cells_per_degree must have dimension+1 entries");
  if (cells.incidences.size() != static_cast<size_t>(n + 1))
    throw Error(ErrorCode::ShapeMismatch, "incidences must have dimension+1 entries");

  const int r = rho.rank();
  std::vector<Matrix> boundaries(static_cast<size_t>(n + 1));
  for (int k = 1; k <= n; ++k) {
    const auto& cell_list = cells.incidences[static_cast<size_t>(k)];
    if (cell_list.size() != static_cast<size_t>(cells.cells(k)))
      throw Error(ErrorCode::ShapeMismatch,
                  "degree " + std::to_string(k) + " lists the wrong number of cells");
    Matrix d = Matrix::Zero(r * cells.cells(k - 1), r * cells.cells(k));
    for (int j = 0; j < cells.cells(k); ++j) {
      for (const Incidence& inc : cell_list[static_cast<size_t>(j)]) {
        if (inc.cell < 0 || inc.cell >= cells.cells(k - 1))
          throw Error(ErrorCode::ShapeMismatch,
                      "cell " + std::to_string(j) + " of degree " + std::to_string(k) +
                          " references missing face " + std::to_string(inc.cell));
        d.block(r * inc.cell, r * j, r, r) += inc.coeff * rho.evaluate(inc.word);
      }
    }
    boundaries[static_cast<size_t>(k)] = std::move(d);
  }
  return TwistedComplex(r, cells.cells_per_degree, std::move(boundaries));
}

ValidationReport validate(int rank, const std::vector<int>& cells_per_degree,
                          const std::vector<Matrix>& boundaries) {
  ValidationReport rep;
  rep.rank = rank;
  const int n = static_cast<int>(cells_per_degree.size()) - 1;
  for (int c : cells_per_degree) rep.chain_dims.push_back(rank * c);
  rep.residual.assign(static_cast<size_t>(n + 1), 0.0);
  rep.tolerance.assign(static_cast<size_t>(n + 1), 0.0);

  auto at = [&](int k) -> const Matrix& { return boundaries[static_cast<size_t>(k)]; };
  if (boundaries.size() != cells_per_degree.size()) {
    rep.shapes_chain = false;
    return rep;
  }
  for (int k = 1; k <= n; ++k) {
    if (at(k).rows() != rep.chain_dims[static_cast<size_t>(k - 1)] ||
        at(k).cols() != rep.chain_dims[static_cast<size_t>(k)])
      rep.shapes_chain = false;
  }
  if (!rep.shapes_chain) return rep;

  for (int k = 2; k <= n; ++k) {
    const Matrix prod = at(k - 1) * at(k);
    const double res = max_abs(prod);
    const double tol = kChainTol * (1.0 + inf_norm(at(k - 1)) * inf_norm(at(k)));
    rep.residual[static_cast<size_t>(k)] = res;
    rep.tolerance[static_cast<size_t>(k)] = tol;
    rep.max_residual = std::max(rep.max_residual, res);
    if (!(res <= tol)) rep.flagged_degrees.push_back(k);
  }
  return rep;
}

ValidationReport validate(const TwistedComplex& complex) {
  std::vector<Matrix> b;
  for (int k = 0; k <= complex.dimension(); ++k)
    b.push_back(k == 0 ? Matrix::Zero(0, complex.chain_dim(0)) : complex.boundary(k));
  return validate(complex.rank(), complex.cells_per_degree(), b);
}

// ---------------------------------------------------------------------------
// Presets

PresetKind parse_preset_kind(const std::string& name) {
  if (name == "circle") return PresetKind::Circle;
  if (name == "torus2" || name == "torus") return PresetKind::Torus2;
  if (name == "interval") return PresetKind::Interval;
  if (name == "point") return PresetKind::Point;
  throw Error(ErrorCode::ParseError, "unknown preset '" + name + "'");
}

const char* preset_kind_name(PresetKind kind) {
  switch (kind) {
    case PresetKind::Circle: return "circle";
    case PresetKind::Torus2: return "torus2";
    case PresetKind::Interval: return "interval";
    case PresetKind::Point: return "point";
  }
  return "?";
}

std::pair<CellStructure, Representation> preset(const PresetSpec& spec) {
  CellStructure cs;
  switch (spec.kind) {
    case PresetKind::Point: {
      if (spec.rank <= 0) throw Error(ErrorCode::BadParameter, "rank must be positive");
      cs.dimension = 0;
      cs.cells_per_degree = {1};
      cs.incidences = {{{}}};
      return {cs, Representation::trivial(spec.rank, 0)};
    }
    case PresetKind::Interval: {
      if (spec.rank <= 0) throw Error(ErrorCode::BadParameter, "rank must be positive");
      cs.dimension = 1;
      cs.cells_per_degree = {2, 1};
      cs.incidences = {{{}, {}}, {{{1, 1.0, {}}, {0, -1.0, {}}}}};
      return {cs, Representation::trivial(spec.rank, 0)};
    }
    case PresetKind::Circle: {
      check_angle(spec.theta, "theta");
      if (spec.theta == 0.0 && !spec.allow_non_acyclic)
        throw Error(ErrorCode::NotAcyclicPreset, "circle preset needs theta != 0");
      cs.dimension = 1;
      cs.cells_per_degree = {1, 1};
      // ∂e = (t - 1) v
      cs.incidences = {{{}}, {{{0, 1.0, {{0, 1}}}, {0, -1.0, {}}}}};
      return {cs, Representation(spec.rank, {block_rotation(spec.rank, spec.theta)})};
    }
    case PresetKind::Torus2: {
      check_angle(spec.alpha, "alpha");
      check_angle(spec.beta, "beta");
      if (spec.alpha == 0.0 && spec.beta == 0.0 && !spec.allow_non_acyclic)
        throw Error(ErrorCode::NotAcyclicPreset, "torus2 preset needs alpha or beta != 0");
      cs.dimension = 2;
      cs.cells_per_degree = {1, 2, 1};
      const Letter a{0, 1}, b{1, 1}, ai{0, -1}, bi{1, -1};
      // 1-cells: ∂a = (a - 1) v, ∂b = (b - 1) v.
      std::vector<std::vector<Incidence>> one_cells = {
          {{0, 1.0, {a}}, {0, -1.0, {}}},
          {{0, 1.0, {b}}, {0, -1.0, {}}},
      };
      // 2-cell: Fox derivatives of the relator a b a⁻¹ b⁻¹:
      //   ∂r/∂a = 1 - a b a⁻¹,  ∂r/∂b = a - a b a⁻¹ b⁻¹.
      std::vector<std::vector<Incidence>> two_cells = {{
          {0, 1.0, {}},
          {0, -1.0, {a, b, ai}},
          {1, 1.0, {a}},
          {1, -1.0, {a, b, ai, bi}},
      }};
      cs.incidences = {{{}}, one_cells, two_cells};
      return {cs, Representation(spec.rank, {block_rotation(spec.rank, spec.alpha),
                                              block_rotation(spec.rank, spec.beta)})};
    }
  }
  throw Error(ErrorCode::ParseError, "unknown preset");
}

// ---------------------------------------------------------------------------
// JSON interchange

std::pair<CellStructure, Representation> parse_complex_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  reject_unknown(root, {"dimension", "rank", "generators", "rep", "cells"}, "complex");

  const int n = get_as<int>(root["dimension"], "dimension");
  const int rank = get_as<int>(root["rank"], "rank");
  const int gens = get_as<int>(root["generators"], "generators");
  if (n < 0 || rank <= 0 || gens < 0)
    throw Error(ErrorCode::ParseError, "dimension/rank/generators out of range");

  const json& rep = root["rep"];
  if (!rep.is_array() || rep.size() != static_cast<size_t>(gens))
    throw Error(ErrorCode::ParseError, "'rep' must list one matrix per generator");
  std::vector<Matrix> images;
  for (size_t g = 0; g < rep.size(); ++g) {
    const json& rows = rep[g];
    if (!rows.is_array() || rows.size() != static_cast<size_t>(rank))
      throw Error(ErrorCode::ParseError, "rep[" + std::to_string(g) + "] must have rank rows");
    Matrix m(rank, rank);
    for (int i = 0; i < rank; ++i) {
      const json& row = rows[static_cast<size_t>(i)];
      if (!row.is_array() || row.size() != static_cast<size_t>(rank))
        throw Error(ErrorCode::ParseError, "rep row has wrong length");
      for (int j = 0; j < rank; ++j)
        m(i, j) = get_as<double>(row[static_cast<size_t>(j)], "rep entry");
    }
    images.push_back(std::move(m));
  }

  CellStructure cs;
  cs.dimension = n;
  cs.cells_per_degree.assign(static_cast<size_t>(n + 1), 0);
  cs.incidences.assign(static_cast<size_t>(n + 1), {});
  const json& cells = root["cells"];
  if (!cells.is_array()) throw Error(ErrorCode::ParseError, "'cells' must be an array");
  for (const json& cell : cells) {
    reject_unknown(cell, {"dim", "boundary"}, "cell");
    const int k = get_as<int>(cell["dim"], "cell dim");
    if (k < 0 || k > n) throw Error(ErrorCode::ParseError, "cell dim out of range");
    const json& bd = cell["boundary"];
    if (!bd.is_array()) throw Error(ErrorCode::ParseError, "cell boundary must be an array");
    if (k == 0 && !bd.empty())
      throw Error(ErrorCode::ParseError, "0-cells have empty boundary");
    std::vector<Incidence> list;
    for (const json& entry : bd) {
      reject_unknown(entry, {"cell", "coeff", "word"}, "incidence");
      Incidence inc;
      inc.cell = get_as<int>(entry["cell"], "incidence cell");
      inc.coeff = get_as<double>(entry["coeff"], "incidence coeff");
      const json& word = entry["word"];
      if (!word.is_array()) throw Error(ErrorCode::ParseError, "word must be an array");
      for (const json& letter : word) {
        if (!letter.is_array() || letter.size() != 2)
          throw Error(ErrorCode::ParseError, "word letters are [generator, exponent] pairs");
        Letter l{get_as<int>(letter[0], "generator"), get_as<int>(letter[1], "exponent")};
        if (l.generator < 0 || l.generator >= gens)
          throw Error(ErrorCode::ParseError, "word uses unknown generator");
        if (l.exponent != 1 && l.exponent != -1)
          throw Error(ErrorCode::ParseError, "word exponent must be +1 or -1");
        inc.word.push_back(l);
      }
      list.push_back(std::move(inc));
    }
    cs.incidences[static_cast<size_t>(k)].push_back(std::move(list));
    ++cs.cells_per_degree[static_cast<size_t>(k)];
  }
  return {std::move(cs), Representation(rank, std::move(images))};
}

std::string complex_to_json(const CellStructure& cells, const Representation& rho) {
  json root;
  root["dimension"] = cells.dimension;
  root["rank"] = rho.rank();
  root["generators"] = rho.generator_count();
  json rep = json::array();
  for (const Matrix& g : rho.generator_images()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(g(i, j));
      rows.push_back(row);
    }
    rep.push_back(rows);
  }
  root["rep"] = rep;
  json list = json::array();
  for (int k = 0; k <= cells.dimension; ++k) {
    for (const auto& bd : cells.incidences[static_cast<size_t>(k)]) {
      json entries = json::array();
      for (const Incidence& inc : bd) {
        json word = json::array();
        for (const Letter& l : inc.word) word.push_back({l.generator, l.exponent});
        entries.push_back({{"cell", inc.cell}, {"coeff", inc.coeff}, {"word", word}});
      }
      list.push_back({{"dim", k}, {"boundary", entries}});
    }
  }
  root["cells"] = list;
  return root.dump();
}

}  // namespace torsionlab
