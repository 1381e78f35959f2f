#include <cmath>

#include "hpfrac/errors.hpp"
#include "hpfrac/mesh.hpp"

namespace hpfrac {

namespace {

std::vector<double> powers(double sigma, int from, int to) {
  std::vector<double> out;
  for (int i = from; i <= to; ++i) out.push_back(std::pow(sigma, i));
  return out;
}

void check_decreasing(const std::vector<double>& v, const char* what) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0 && v[i] < 1)) throw ParameterError(std::string("pattern ") + what + " must lie in (0,1)");
    if (i > 0 && !(v[i] < v[i - 1])) throw ParameterError(std::string("pattern ") + what + " must be decreasing");
  }
}

// {0} + scale * ascending(v) + {top}
std::vector<double> levels(const std::vector<double>& v, double scale, double top) {
  std::vector<double> out{0.0};
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(scale * *it);
  out.push_back(top);
  return out;
}

RefQuad rect(double x0, double y0, double x1, double y1, int ring) {
  return {{Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}}, ring};
}

void append_corner(std::vector<RefQuad>& out, const std::vector<double>& rings, double scale, int ring0) {
  double a = 1.0;
  int ring = ring0;
  for (double c : rings) {
    const double A = scale * a, B = scale * c;
    out.push_back({{Point{B, 0}, Point{A, 0}, Point{A, A}, Point{B, B}}, ring});
    out.push_back({{Point{B, B}, Point{A, A}, Point{0, A}, Point{0, B}}, ring});
    a = c;
    ++ring;
  }
  out.push_back(rect(0, 0, scale * a, scale * a, ring));
}

}  // namespace

std::string pattern_name(PatternKind k) {
  switch (k) {
    case PatternKind::trivial: return "trivial";
    case PatternKind::boundary_layer: return "bl";
    case PatternKind::corner: return "corner";
    case PatternKind::tensor: return "tensor";
    case PatternKind::mixed: return "mixed";
  }
  return "?";
}

std::vector<RefQuad> refine_pattern(const PatternSpec& pat) {
  check_decreasing(pat.heights, "heights");
  check_decreasing(pat.rings, "rings");
  check_decreasing(pat.slopes, "slopes");
  std::vector<RefQuad> out;
  switch (pat.kind) {
    case PatternKind::trivial:
      out.push_back(rect(0, 0, 1, 1, 0));
      break;
    case PatternKind::boundary_layer: {
      const auto lv = levels(pat.heights, 1.0, 1.0);
      for (size_t i = 0; i + 1 < lv.size(); ++i) out.push_back(rect(0, lv[i], 1, lv[i + 1], static_cast<int>(i)));
      break;
    }
    case PatternKind::corner:
      append_corner(out, pat.rings, 1.0, 0);
      break;
    case PatternKind::tensor: {
      const auto b = levels(pat.heights, 1.0, 1.0);
      const double inner = b[1];
      std::vector<double> scaled;
      for (double r : pat.rings) {
        if (!(r < inner)) throw ParameterError("tensor pattern: inner rings must lie inside the first grid cell");
        scaled.push_back(r / inner);
      }
      for (size_t j = 0; j + 1 < b.size(); ++j)
        for (size_t i = 0; i + 1 < b.size(); ++i) {
          if (i == 0 && j == 0) continue;
          out.push_back(rect(b[i], b[j], b[i + 1], b[j + 1], static_cast<int>(std::min(i, j))));
        }
      append_corner(out, scaled, inner, 0);
      break;
    }
    case PatternKind::mixed: {
      if (pat.heights.size() != pat.slopes.size())
        throw ParameterError("mixed pattern: heights and slopes must have equal length");
      double a = 1.0;
      int ring = 0;
      for (double c : pat.rings) {
        const auto right = ring == 0 ? levels(pat.heights, 1.0, a) : levels(pat.slopes, a, a);
        const auto left = levels(pat.slopes, c, c);
        for (size_t i = 0; i + 1 < right.size(); ++i)
          out.push_back({{Point{c, left[i]}, Point{a, right[i]}, Point{a, right[i + 1]}, Point{c, left[i + 1]}}, ring});
        out.push_back({{Point{c, c}, Point{a, a}, Point{0, a}, Point{0, c}}, ring});
        a = c;
        ++ring;
      }
      const auto lv = pat.rings.empty() ? levels(pat.heights, 1.0, 1.0) : levels(pat.slopes, a, a);
      for (size_t i = 0; i + 1 < lv.size(); ++i) out.push_back(rect(0, lv[i], a, lv[i + 1], ring));
      break;
    }
  }
  return out;
}

int pattern_element_count(const PatternSpec& pat) {
  const int g = static_cast<int>(pat.heights.size());
  const int k = static_cast<int>(pat.rings.size());
  switch (pat.kind) {
    case PatternKind::trivial: return 1;
    case PatternKind::boundary_layer: return g + 1;
    case PatternKind::corner: return 2 * k + 1;
    case PatternKind::tensor: return (g + 1) * (g + 1) - 1 + 2 * k + 1;
    case PatternKind::mixed: return k * (g + 2) + g + 1;
  }
  return 0;
}

PatternSpec trivial_pattern() { return {}; }

PatternSpec bl_pattern(int L, double sigma) {
  if (L < 0) throw ParameterError("bl_pattern: L must be >= 0");
  if (!(sigma > 0 && sigma < 1)) throw ParameterError("pattern sigma must lie in (0,1)");
  return {PatternKind::boundary_layer, powers(sigma, 1, L), {}, {}};
}

PatternSpec corner_pattern(int n, double sigma) {
  if (n < 0) throw ParameterError("corner_pattern: n must be >= 0");
  if (!(sigma > 0 && sigma < 1)) throw ParameterError("pattern sigma must lie in (0,1)");
  return {PatternKind::corner, {}, powers(sigma, 1, n), {}};
}

PatternSpec tensor_pattern(int L, int n, double sigma) {
  if (L < 0 || n < L) throw ParameterError("tensor_pattern: requires n >= L >= 0");
  if (!(sigma > 0 && sigma < 1)) throw ParameterError("pattern sigma must lie in (0,1)");
  return {PatternKind::tensor, powers(sigma, 1, L), powers(sigma, L + 1, n), {}};
}

PatternSpec mixed_pattern(int L, int n, double sigma) {
  if (L < 0 || n < L) throw ParameterError("mixed_pattern: requires n >= L >= 0");
  if (!(sigma > 0 && sigma < 1)) throw ParameterError("pattern sigma must lie in (0,1)");
  return {PatternKind::mixed, powers(sigma, 1, L), powers(sigma, 1, n), powers(sigma, 1, L)};
}

}  // namespace hpfrac
