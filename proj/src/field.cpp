#include "fiolab/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fiolab/errors.hpp"
#include "fiolab/fft.hpp"

namespace fiolab {

namespace {

double cell_volume(const Grid& g, Side side) {
  const double h = side == Side::physical ? g.spacing() : g.dual_spacing();
  double v = 1.0;
  for (int d = 0; d < g.dim; ++d) v *= h;
  if (side == Side::frequency)
    for (int d = 0; d < g.dim; ++d) v /= 2.0 * std::numbers::pi;
  return v;
}

// Phase factor e^{+- i L * sum_d xi_k[d]} relating the DFT (index space)
// to transform values on [-L, L)^n.
void apply_offset_phase(SampledField& u, double sign) {
  const Grid& g = u.grid;
  const std::int64_t total = g.size();
#pragma omp parallel for
  for (std::int64_t i = 0; i < total; ++i) {
    Point xi = g.freq_at(i);
    double s = 0.0;
    for (int d = 0; d < g.dim; ++d) s += xi[d];
    const double ang = sign * g.half_width * s;
    u.values[i] *= cdouble(std::cos(ang), std::sin(ang));
  }
}

}  // namespace

double SampledField::l2_norm() const {
  double s = 0.0;
  for (const cdouble& v : values) s += std::norm(v);
  return std::sqrt(s * cell_volume(grid, side));
}

double SampledField::max_abs() const {
  double m = 0.0;
  for (const cdouble& v : values) m = std::max(m, std::abs(v));
  return m;
}

SampledField make_field(const Grid& g, Side side,
                        const std::function<cdouble(const Point&)>& f) {
  SampledField u(g, side);
  const std::int64_t total = g.size();
#pragma omp parallel for
  for (std::int64_t i = 0; i < total; ++i)
    u.values[i] = f(side == Side::physical ? g.point_at(i) : g.freq_at(i));
  return u;
}

SampledField transform(const SampledField& u, Side target) {
  if (u.side == target)
    throw config_error("transform: field is already on the requested side");
  const Grid& g = u.grid;
  SampledField out = u;
  out.side = target;

  if (target == Side::frequency) {
    dft_nd(out.values, g.dim, g.points_per_axis, /*inverse=*/false);
    double scale = 1.0;
    for (int d = 0; d < g.dim; ++d) scale *= g.spacing();
    for (cdouble& v : out.values) v *= scale;
    apply_offset_phase(out, +1.0);
  } else {
    apply_offset_phase(out, -1.0);
    dft_nd(out.values, g.dim, g.points_per_axis, /*inverse=*/true);
    double scale = 1.0;
    for (int d = 0; d < g.dim; ++d)
      scale *= g.dual_spacing() / (2.0 * std::numbers::pi);
    for (cdouble& v : out.values) v *= scale;
  }
  return out;
}

void accumulate(SampledField& dst, const SampledField& src, cdouble scale) {
  if (dst.values.size() != src.values.size() || dst.side != src.side)
    throw config_error("accumulate: field layout mismatch");
  for (std::size_t i = 0; i < dst.values.size(); ++i)
    dst.values[i] += scale * src.values[i];
}

double relative_l2_error(const SampledField& got, const SampledField& want) {
  if (got.values.size() != want.values.size())
    throw config_error("relative_l2_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.values.size(); ++i) {
    num += std::norm(got.values[i] - want.values[i]);
    den += std::norm(want.values[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

void write_field_csv(const SampledField& u, std::ostream& os) {
  const Grid& g = u.grid;
  for (int d = 0; d < g.dim; ++d) os << "i" << d << ",";
  os << "re,im\r\n";
  std::array<int, kMaxDim> idx;
  char buf[64];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    for (int d = 0; d < g.dim; ++d) os << idx[d] << ",";
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", u.values[i].real(),
                  u.values[i].imag());
    os << buf << "\r\n";
  }
}

SampledField read_field_csv(const Grid& g, Side side, std::istream& is) {
  SampledField u(g, side);
  std::string line;
  if (!std::getline(is, line)) throw config_error("field csv: missing header");
  std::int64_t row = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row >= g.size()) throw config_error("field csv: too many rows");
    std::stringstream ss(line);
    std::string tok;
    std::array<int, kMaxDim> idx{};
    for (int d = 0; d < g.dim; ++d) {
      if (!std::getline(ss, tok, ',')) throw config_error("field csv: short row");
      idx[d] = std::stoi(tok);
    }
    if (!std::getline(ss, tok, ',')) throw config_error("field csv: short row");
    const double re = std::stod(tok);
    if (!std::getline(ss, tok, ',')) throw config_error("field csv: short row");
    const double im = std::stod(tok);
    u.values[g.flatten(idx)] = cdouble(re, im);
    ++row;
  }
  if (row != g.size()) throw config_error("field csv: row count mismatch");
  return u;
}

void write_field_binary(const SampledField& u, std::ostream& os) {
  const std::uint32_t n = static_cast<std::uint32_t>(u.grid.dim);
  const std::uint32_t N = static_cast<std::uint32_t>(u.grid.points_per_axis);
  const double L = u.grid.half_width;
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  os.write(reinterpret_cast<const char*>(&N), sizeof N);
  os.write(reinterpret_cast<const char*>(&L), sizeof L);
  for (const cdouble& v : u.values) {
    const double re = v.real(), im = v.imag();
    os.write(reinterpret_cast<const char*>(&re), sizeof re);
    os.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
}

SampledField read_field_binary(std::istream& is, Side side) {
  std::uint32_t n = 0, N = 0;
  double L = 0.0;
  is.read(reinterpret_cast<char*>(&n), sizeof n);
  is.read(reinterpret_cast<char*>(&N), sizeof N);
  is.read(reinterpret_cast<char*>(&L), sizeof L);
  if (!is) throw config_error("field binary: truncated header");
  Grid g = make_grid_unchecked(static_cast<int>(n), static_cast<int>(N), L);
  SampledField u(g, side);
  for (cdouble& v : u.values) {
    double re = 0.0, im = 0.0;
    is.read(reinterpret_cast<char*>(&re), sizeof re);
    is.read(reinterpret_cast<char*>(&im), sizeof im);
    v = cdouble(re, im);
  }
  if (!is) throw config_error("field binary: truncated payload");
  return u;
}

}  // namespace fiolab
