#include "pssc/polyhedron.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pssc/error.hpp"
#include "pssc/lp.hpp"

namespace pssc {

namespace {

constexpr double kZeroRow = 1e-12;

Matrix select_rows(const Matrix& F, const std::vector<Index>& rows)
{
  Matrix out(static_cast<Index>(rows.size()), F.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.row(static_cast<Index>(k)) = F.row(rows[k]);
  }
  return out;
}

Vector select_entries(const Vector& g, const std::vector<Index>& rows)
{
  Vector out(static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out(static_cast<Index>(k)) = g(rows[k]);
  }
  return out;
}

LpResult maximize_over(const Matrix& F, const Vector& g, const Vector& c)
{
  LinearProgram lp;
  lp.F = F;
  lp.g = g;
  lp.E = Matrix(0, c.size());
  lp.h = Vector(0);
  lp.c = c;
  return solve_lp(lp);
}

Vector scatter_certificate(const Vector& partial, const std::vector<Index>& rows, Index total)
{
  Vector cert = Vector::Zero(total);
  for (std::size_t k = 0; k < rows.size() && static_cast<Index>(k) < partial.size(); ++k) {
    cert(rows[k]) = partial(static_cast<Index>(k));
  }
  return cert;
}

} // namespace

Polyhedron::Polyhedron(Matrix F, Vector g) : F_(std::move(F)), g_(std::move(g)), dim_(F_.cols())
{
  if (F_.rows() != g_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "polyhedron has " + std::to_string(F_.rows()) + " rows but offset of size "
                    + std::to_string(g_.size()));
  }
}

Polyhedron Polyhedron::from_box(const Vector& lower, const Vector& upper)
{
  if (lower.size() != upper.size()) {
    throw Error(ErrorCode::DimensionMismatch, "box bounds differ in length");
  }
  const Index p = lower.size();
  for (Index i = 0; i < p; ++i) {
    if (!(lower(i) < upper(i))) {
      throw Error(ErrorCode::EmptyBox, "box coordinate " + std::to_string(i)
                                           + " has lower >= upper");
    }
  }
  Matrix F = Matrix::Zero(2 * p, p);
  Vector g(2 * p);
  for (Index i = 0; i < p; ++i) {
    F(2 * i, i) = 1.0;
    g(2 * i) = upper(i);
    F(2 * i + 1, i) = -1.0;
    g(2 * i + 1) = -lower(i);
  }
  return Polyhedron(std::move(F), std::move(g));
}

Polyhedron Polyhedron::universe(Index dim)
{
  return Polyhedron(Matrix(0, dim), Vector(0));
}

Polyhedron Polyhedron::certified_empty(Index dim, Vector certificate)
{
  // canonical empty set: 0'w <= -1
  Polyhedron P(Matrix::Zero(1, dim), Vector::Constant(1, -1.0));
  P.empty_ = true;
  P.certificate_ = std::move(certificate);
  return P;
}

double Polyhedron::max_violation(const Vector& w) const
{
  if (w.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match polyhedron");
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < rows(); ++i) {
    const double norm = F_.row(i).norm();
    const double lhs = F_.row(i).dot(w) - g_(i);
    worst = std::max(worst, norm > kZeroRow ? lhs / norm : lhs);
  }
  return worst;
}

bool Polyhedron::contains(const Vector& w, double tol) const
{
  if (empty_) {
    return false;
  }
  return rows() == 0 || max_violation(w) <= tol;
}

Polyhedron Polyhedron::minimize(double tol) const
{
  if (empty_) {
    return *this;
  }
  // normalize and drop trivial rows
  std::vector<Index> keep;
  Matrix F = F_;
  Vector g = g_;
  for (Index i = 0; i < F.rows(); ++i) {
    const double norm = F.row(i).norm();
    if (norm <= kZeroRow) {
      if (g(i) < -tol) {
        Vector cert = Vector::Zero(rows());
        cert(i) = 1.0;
        return certified_empty(dim_, std::move(cert));
      }
      continue;
    }
    F.row(i) /= norm;
    g(i) /= norm;
    keep.push_back(i);
  }

  // parallel duplicates: keep the tightest
  std::vector<Index> unique;
  for (const Index i : keep) {
    bool merged = false;
    for (Index& j : unique) {
      if ((F.row(i) - F.row(j)).lpNorm<Eigen::Infinity>() <= 1e-12) {
        if (g(i) < g(j)) {
          j = i;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      unique.push_back(i);
    }
  }
  std::sort(unique.begin(), unique.end());

  Matrix Fu = select_rows(F, unique);
  Vector gu = select_entries(g, unique);
  if (Fu.rows() == 0) {
    return Polyhedron(Fu, gu);
  }

  const LpResult feas = maximize_over(Fu, gu, Vector::Zero(dim_));
  if (feas.status == LpStatus::Infeasible) {
    // certificate over the original rows (scaled back by the normalization)
    Vector cert = scatter_certificate(feas.farkas_ineq, unique, rows());
    for (const Index i : unique) {
      cert(i) /= F_.row(i).norm();
    }
    return certified_empty(dim_, std::move(cert));
  }

  std::vector<bool> alive(unique.size(), true);
  for (std::size_t k = 0; k < unique.size(); ++k) {
    std::vector<Index> others;
    others.reserve(unique.size());
    for (std::size_t j = 0; j < unique.size(); ++j) {
      if (j != k && alive[j]) {
        others.push_back(static_cast<Index>(j));
      }
    }
    const Index ki = static_cast<Index>(k);
    Matrix Fo(static_cast<Index>(others.size()) + 1, dim_);
    Vector go(static_cast<Index>(others.size()) + 1);
    for (std::size_t j = 0; j < others.size(); ++j) {
      Fo.row(static_cast<Index>(j)) = Fu.row(others[j]);
      go(static_cast<Index>(j)) = gu(others[j]);
    }
    // keep the LP bounded in the probed direction
    Fo.row(Fo.rows() - 1) = Fu.row(ki);
    go(go.size() - 1) = gu(ki) + 1.0;
    const LpResult res = maximize_over(Fo, go, Fu.row(ki).transpose());
    if (res.status == LpStatus::Optimal && res.objective <= gu(ki) + tol) {
      alive[k] = false;
    }
  }

  std::vector<Index> final_rows;
  for (std::size_t k = 0; k < unique.size(); ++k) {
    if (alive[k]) {
      final_rows.push_back(static_cast<Index>(k));
    }
  }
  return Polyhedron(select_rows(Fu, final_rows), select_entries(gu, final_rows));
}

std::optional<std::pair<Vector, Vector>> Polyhedron::box_bounds() const
{
  const double inf = std::numeric_limits<double>::infinity();
  Vector lower = Vector::Constant(dim_, -inf);
  Vector upper = Vector::Constant(dim_, inf);
  for (Index i = 0; i < rows(); ++i) {
    Index nonzero = -1;
    for (Index j = 0; j < dim_; ++j) {
      if (std::abs(F_(i, j)) > kZeroRow) {
        if (nonzero >= 0) {
          return std::nullopt;
        }
        nonzero = j;
      }
    }
    if (nonzero < 0) {
      return std::nullopt;
    }
    const double a = F_(i, nonzero);
    const double bound = g_(i) / a;
    if (a > 0) {
      upper(nonzero) = std::min(upper(nonzero), bound);
    } else {
      lower(nonzero) = std::max(lower(nonzero), bound);
    }
  }
  if (!lower.allFinite() || !upper.allFinite()) {
    return std::nullopt;
  }
  return std::make_pair(lower, upper);
}

std::optional<double> Polyhedron::support(const Vector& c) const
{
  if (empty_) {
    return std::nullopt;
  }
  const LpResult res = maximize_over(F_, g_, c);
  if (res.status != LpStatus::Optimal) {
    return std::nullopt;
  }
  return res.objective;
}

std::optional<Vector> Polyhedron::feasible_point() const
{
  if (empty_) {
    return std::nullopt;
  }
  const LpResult res = maximize_over(F_, g_, Vector::Zero(dim_));
  if (res.status != LpStatus::Optimal) {
    return std::nullopt;
  }
  return res.w;
}

std::optional<std::pair<Vector, Vector>> Polyhedron::bounding_box() const
{
  Vector lower(dim_);
  Vector upper(dim_);
  for (Index j = 0; j < dim_; ++j) {
    Vector e = Vector::Zero(dim_);
    e(j) = 1.0;
    const auto hi = support(e);
    const auto lo = support(-e);
    if (!hi || !lo) {
      return std::nullopt;
    }
    upper(j) = *hi;
    lower(j) = -*lo;
  }
  return std::make_pair(lower, upper);
}

Polyhedron Polyhedron::preimage(const Matrix& M) const
{
  if (M.rows() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "preimage map has wrong output dimension");
  }
  if (empty_) {
    return certified_empty(M.cols(), certificate_);
  }
  return Polyhedron(F_ * M, g_);
}

Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q)
{
  if (P.dim() != Q.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot intersect polyhedra of dimension "
                                                  + std::to_string(P.dim()) + " and "
                                                  + std::to_string(Q.dim()));
  }
  if (P.is_empty()) {
    return P;
  }
  if (Q.is_empty()) {
    return Q;
  }
  Matrix F(P.rows() + Q.rows(), P.dim());
  Vector g(P.rows() + Q.rows());
  F << P.F(), Q.F();
  g << P.g(), Q.g();
  return Polyhedron(std::move(F), std::move(g)).minimize();
}

bool is_subset(const Polyhedron& P, const Polyhedron& Q, double tol)
{
  if (P.dim() != Q.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "containment test across dimensions");
  }
  if (P.is_empty() || !P.feasible_point()) {
    return true;
  }
  if (Q.is_empty()) {
    return false;
  }
  for (Index i = 0; i < Q.rows(); ++i) {
    const double norm = Q.F().row(i).norm();
    if (norm <= kZeroRow) {
      if (Q.g()(i) < -tol) {
        return false;
      }
      continue;
    }
    const auto value = P.support(Q.F().row(i).transpose() / norm);
    if (!value || *value > Q.g()(i) / norm + tol) {
      return false;
    }
  }
  return true;
}

Polyhedron project(const Polyhedron& P, std::span<const Index> keep, const ProjectionOptions& options)
{
  if (keep.empty()) {
    throw Error(ErrorCode::InvalidArgument, "projection needs at least one kept coordinate");
  }
  std::vector<bool> kept(static_cast<std::size_t>(P.dim()), false);
  for (const Index k : keep) {
    if (k < 0 || k >= P.dim()) {
      throw Error(ErrorCode::InvalidArgument, "projection coordinate out of range");
    }
    kept[static_cast<std::size_t>(k)] = true;
  }

  Polyhedron current = P.minimize(options.tolerance);
  // column order of `current` in terms of the original coordinates
  std::vector<Index> columns(static_cast<std::size_t>(P.dim()));
  for (Index j = 0; j < P.dim(); ++j) {
    columns[static_cast<std::size_t>(j)] = j;
  }
  const Index out_dim = static_cast<Index>(keep.size());
  if (current.is_empty()) {
    return Polyhedron::certified_empty(out_dim, current.emptiness_certificate());
  }

  for (Index original = P.dim() - 1; original >= 0; --original) {
    if (kept[static_cast<std::size_t>(original)]) {
      continue;
    }
    const auto it = std::find(columns.begin(), columns.end(), original);
    const Index col = static_cast<Index>(it - columns.begin());
    const Matrix& F = current.F();
    const Vector& g = current.g();
    std::vector<Index> pos;
    std::vector<Index> neg;
    std::vector<Index> zero;
    for (Index i = 0; i < F.rows(); ++i) {
      if (F(i, col) > kZeroRow) {
        pos.push_back(i);
      } else if (F(i, col) < -kZeroRow) {
        neg.push_back(i);
      } else {
        zero.push_back(i);
      }
    }
    const Index count = static_cast<Index>(zero.size() + pos.size() * neg.size());
    if (count > options.max_rows) {
      throw Error(ErrorCode::ProjectionBlowup,
                  "Fourier-Motzkin step would create " + std::to_string(count)
                      + " rows (cap " + std::to_string(options.max_rows) + ")");
    }
    const Index new_dim = F.cols() - 1;
    Matrix Fn(count, new_dim);
    Vector gn(count);
    auto drop_col = [&](const Eigen::RowVectorXd& row) {
      Eigen::RowVectorXd out(new_dim);
      out << row.head(col), row.tail(new_dim - col);
      return out;
    };
    Index r = 0;
    for (const Index i : zero) {
      Fn.row(r) = drop_col(F.row(i));
      gn(r) = g(i);
      ++r;
    }
    for (const Index i : pos) {
      for (const Index j : neg) {
        const double a = F(i, col);
        const double b = -F(j, col);
        Fn.row(r) = drop_col(F.row(i) / a + F.row(j) / b);
        gn(r) = g(i) / a + g(j) / b;
        ++r;
      }
    }
    columns.erase(columns.begin() + col);
    current = Polyhedron(std::move(Fn), std::move(gn)).minimize(options.tolerance);
    if (current.is_empty()) {
      return Polyhedron::certified_empty(out_dim, current.emptiness_certificate());
    }
  }

  // reorder surviving columns to match `keep`
  Matrix F(current.rows(), out_dim);
  for (Index k = 0; k < out_dim; ++k) {
    const auto it = std::find(columns.begin(), columns.end(), keep[static_cast<std::size_t>(k)]);
    F.col(k) = current.F().col(static_cast<Index>(it - columns.begin()));
  }
  return Polyhedron(std::move(F), current.g());
}

void write_polyhedron(std::ostream& os, const Polyhedron& P)
{
  os << "# polyhedron dim " << P.dim() << " rows " << P.rows()
     << (P.is_empty() ? " empty" : "") << '\n';
  char buf[64];
  for (Index i = 0; i < P.rows(); ++i) {
    for (Index j = 0; j <= P.dim(); ++j) {
      const double v = j < P.dim() ? P.F()(i, j) : P.g()(i);
      const auto res = std::to_chars(buf, buf + sizeof(buf), v);
      if (j > 0) {
        os << ' ';
      }
      os.write(buf, res.ptr - buf);
    }
    os << '\n';
  }
}

Polyhedron read_polyhedron(std::istream& is, Index dim)
{
  std::vector<std::vector<double>> rows;
  bool empty = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string word;
      while (header >> word) {
        if (word == "dim") {
          Index d = 0;
          header >> d;
          if (dim < 0) {
            dim = d;
          }
        } else if (word == "empty") {
          empty = true;
        }
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<double> values;
    std::string token;
    while (ls >> token) {
      double v = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw Error(ErrorCode::Io, "malformed number '" + token + "' in polyhedron file");
      }
      values.push_back(v);
    }
    if (values.size() < 2) {
      throw Error(ErrorCode::Io, "polyhedron row needs coefficients and an offset");
    }
    rows.push_back(std::move(values));
  }
  if (dim < 0) {
    if (rows.empty()) {
      throw Error(ErrorCode::Io, "cannot infer polyhedron dimension from an empty file");
    }
    dim = static_cast<Index>(rows.front().size()) - 1;
  }
  if (empty) {
    return Polyhedron::certified_empty(dim, Vector());
  }
  Matrix F(static_cast<Index>(rows.size()), dim);
  Vector g(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Index>(rows[i].size()) != dim + 1) {
      throw Error(ErrorCode::Io, "polyhedron row " + std::to_string(i + 1) + " has "
                                     + std::to_string(rows[i].size()) + " entries, expected "
                                     + std::to_string(dim + 1));
    }
    for (Index j = 0; j < dim; ++j) {
      F(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
    g(static_cast<Index>(i)) = rows[i].back();
  }
  return Polyhedron(std::move(F), std::move(g));
}

} // namespace pssc
