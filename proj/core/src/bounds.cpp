#include "disp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace disp {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw ValidityError("eps must lie in (0,1), got " + std::to_string(eps));
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::vector<BoundReport> lower_bound_catalog(double eps, int d, const BoundConstants& constants) {
  check_eps(eps);
  if (d < 1) throw ValidityError("d must be >= 1");
  std::vector<BoundReport> out;

  {
    BoundReport r;
    r.name = "elementary";
    r.value = 1.0 / eps - 1.0;
    out.push_back(std::move(r));
  }
  {
    // Improves on the elementary bound for d >= 2 only: at d = 1 it
    // overshoots the exact N(eps,1) once n > 15, so it is flagged there.
    BoundReport r;
    r.name = "dum";
    r.value = 5.0 / (4.0 * eps) - 5.0;
    if (d < 2) {
      r.valid = false;
      r.condition = "requires d >= 2 (contradicts exact N(eps,1) at d = 1)";
    }
    out.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "ahr";
    r.value = std::log2(static_cast<double>(d)) / (8.0 * eps);
    if (d < 2) {
      r.valid = false;
      r.condition = "requires d >= 2";
    } else if (!(eps < 0.25)) {
      r.valid = false;
      r.condition = "requires eps in (0, 1/4), got eps = " + format17(eps);
    }
    out.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "bukh-chao";
    r.value = static_cast<double>(d) / (kE * eps);
    // valid for eps <= (8d)^-d, tested in log space to dodge underflow
    if (!(std::log(eps) <= -static_cast<double>(d) * std::log(8.0 * d))) {
      r.valid = false;
      r.condition = "requires eps <= (8d)^-d";
    }
    out.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "logd-eps2";
    r.constant_known = false;
    r.value = constants.logd_eps2_c * std::log(static_cast<double>(d)) /
              (eps * eps * std::log(1.0 / eps));
    if (d < 2) {
      r.valid = false;
      r.condition = "requires d >= 2";
    } else if (!(eps > 1.0 / (4.0 * std::sqrt(static_cast<double>(d))) && eps < 0.25)) {
      r.valid = false;
      r.condition = "requires eps in (1/(4 sqrt d), 1/4), got eps = " + format17(eps);
    }
    out.push_back(std::move(r));
  }
  return out;
}

BoundReport bc_dispersion_lower(long long n, int d) {
  if (n < 1 || d < 1) throw ValidityError("need n >= 1 and d >= 1");
  BoundReport r;
  r.name = "bukh-chao-disp";
  r.target = BoundTarget::disp_star;
  const double nd = static_cast<double>(n);
  r.value = (1.0 / kE) * (2.0 * d / nd) *
            (1.0 - 4.0 * d / std::pow(nd, 1.0 / static_cast<double>(d)));
  if (r.value <= 0.0) {
    r.trivial = true;
    r.condition = "nonpositive for this (n,d); formally true but trivial";
  }
  return r;
}

BoundReport theorem_main_bound(double eps, int d, int k) {
  check_eps(eps);
  if (d < 1) throw ValidityError("d must be >= 1");
  if (k < 1) throw ValidityError("k must be >= 1");

  BoundReport r;
  r.k_used = k;
  const double dd = static_cast<double>(d);
  const double d_pow = std::pow(dd, static_cast<double>(k) / (k + 1));
  const double eps_cap = std::pow(2.0, -(k + 2));
  const double eps_split = std::pow(dd, -static_cast<double>(k) * k / (k + 1));
  const bool dim_ok = dd >= d_pow + k;
  const bool eps_ok = eps < eps_cap;
  const bool sufficient = d >= (k + 1) * (k + 1);

  const double kk = std::pow(static_cast<double>(k), k);
  if (eps >= eps_split) {
    r.name = "cff-i";
    r.part = "i";
    r.value = std::pow(eps, -(static_cast<double>(k) + 1) / k) / (16.0 * kE * kk * (k + 1));
  } else {
    r.name = "cff-ii";
    r.part = "ii";
    r.value = d_pow / (64.0 * kE * kk * (k + 1) * eps);
  }

  std::ostringstream cond;
  if (!dim_ok) cond << "d >= d^(k/(k+1)) + k fails (" << dd << " < " << d_pow + k << "); ";
  if (!eps_ok) cond << "eps < 2^-(k+2) fails (" << format17(eps) << " >= " << format17(eps_cap)
                    << "); ";
  cond << (sufficient ? "sufficient d >= (k+1)^2 holds" : "sufficient d >= (k+1)^2 fails");
  r.condition = cond.str();
  r.valid = dim_ok && eps_ok;
  return r;
}

namespace {

// Step 1 of the selection: the k with eps in [d^-k, d^-(k-1)), fixed up
// with direct pow comparisons so the bracket holds exactly in doubles.
int select_k(double eps, int d) {
  const double dd = static_cast<double>(d);
  int k = static_cast<int>(std::ceil(-std::log(eps) / std::log(dd)));
  k = std::max(k, 1);
  while (std::pow(dd, -static_cast<double>(k)) > eps) ++k;
  while (k > 1 && std::pow(dd, -static_cast<double>(k - 1)) <= eps) --k;
  return k;
}

}  // namespace

BoundReport best_main_bound(double eps, int d) {
  check_eps(eps);
  if (d < 2) throw ValidityError("best_main_bound requires d >= 2");
  const int k = select_k(eps, d);
  BoundReport chosen = theorem_main_bound(eps, d, k);
  if (chosen.valid) return chosen;
  // fall back to the largest-value valid bound among smaller k
  std::optional<BoundReport> best;
  for (int kp = 1; kp <= k; ++kp) {
    BoundReport r = theorem_main_bound(eps, d, kp);
    if (r.valid && (!best || r.value > best->value)) best = std::move(r);
  }
  if (best) return *best;
  BoundReport none;
  none.name = "no-valid-bound";
  none.valid = false;
  none.value = 0.0;
  none.k_used = k;
  none.condition = "no k' in 1.." + std::to_string(k) +
                   " satisfies eps < 2^-(k'+2) and d >= d^(k'/(k'+1)) + k'";
  return none;
}

std::vector<BoundReport> upper_bound_catalog(double eps, int d, const BoundConstants& constants) {
  check_eps(eps);
  if (d < 2) throw ValidityError("upper bounds require d >= 2");
  std::vector<BoundReport> out;
  {
    BoundReport r;
    r.name = "upper-eps2";
    r.direction = BoundDirection::upper;
    r.constant_known = false;
    r.value = constants.upper_eps2_C * std::log(static_cast<double>(d)) * std::log(1.0 / eps) /
              (eps * eps);
    out.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "upper-bukh-chao";
    r.direction = BoundDirection::upper;
    r.constant_known = false;
    r.value = constants.upper_bc_c * static_cast<double>(d) * d *
              std::log(static_cast<double>(d)) / eps;
    out.push_back(std::move(r));
  }
  return out;
}

long long n_exact_1d(double eps) {
  check_eps(eps);
  long long n = static_cast<long long>(std::ceil(1.0 / eps)) - 1;
  n = std::max(n, 0LL);
  // smallest n with 1/(n+1) <= eps, rounding-proofed by direct checks
  while (n >= 1 && 1.0 / static_cast<double>(n) <= eps) --n;
  while (1.0 / static_cast<double>(n + 1) > eps) ++n;
  return n;
}

std::vector<RegionRow> region_scan(int d, double eps_min, double eps_max, int steps) {
  if (d < 1) throw ValidityError("d must be >= 1");
  if (!(eps_min > 0.0 && eps_min < eps_max && eps_max < 1.0))
    throw ValidityError("need 0 < eps_min < eps_max < 1");
  if (steps < 2) throw ValidityError("steps must be >= 2");

  std::vector<RegionRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  const double lmin = std::log(eps_min);
  const double lmax = std::log(eps_max);
  for (int i = 0; i < steps; ++i) {
    const double eps = std::exp(lmin + (lmax - lmin) * i / (steps - 1));
    RegionRow row;
    row.eps = eps;
    row.value = -1.0;
    for (const BoundReport& r : lower_bound_catalog(eps, d)) {
      if (!r.valid || !r.constant_known) continue;
      if (r.value > row.value) {
        row.value = r.value;
        row.winner = r.name;
      }
    }
    if (d >= 2) {
      BoundReport main = best_main_bound(eps, d);
      row.k = main.k_used;
      if (main.valid && main.value > row.value) {
        row.value = main.value;
        row.winner = main.name;
      }
    }
    row.rigorous = row.value >= 0.0;
    if (row.winner.empty()) {
      row.winner = "none";
      row.value = 0.0;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string region_csv(const std::vector<RegionRow>& rows) {
  std::string out = "eps,winner,k,value,rigorous\n";
  for (const RegionRow& row : rows) {
    out += format17(row.eps);
    out += ',';
    out += row.winner;
    out += ',';
    if (row.k) out += std::to_string(*row.k);
    out += ',';
    out += format17(row.value);
    out += ',';
    out += row.rigorous ? "true" : "false";
    out += '\n';
  }
  return out;
}

namespace {

std::string format2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

const char* bound_color(const std::string& name) {
  if (name == "elementary") return "#1f77b4";
  if (name == "dum") return "#ff7f0e";
  if (name == "ahr") return "#2ca02c";
  if (name == "bukh-chao") return "#d62728";
  if (name == "cff-i") return "#9467bd";
  if (name == "cff-ii") return "#8c564b";
  return "#7f7f7f";
}

}  // namespace

std::string region_svg(const std::vector<RegionRow>& rows, int d) {
  const double width = 800, height = 600;
  const double ml = 80, mr = 170, mt = 50, mb = 60;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double lx_min = 0, lx_max = 0, ly_min = 0, ly_max = 0;
  bool first = true;
  for (const RegionRow& row : rows) {
    const double lx = std::log10(row.eps);
    const double v = std::max(row.value, 1e-300);
    const double ly = std::log10(v);
    if (first) {
      lx_min = lx_max = lx;
      ly_min = ly_max = ly;
      first = false;
    } else {
      lx_min = std::min(lx_min, lx);
      lx_max = std::max(lx_max, lx);
      ly_min = std::min(ly_min, ly);
      ly_max = std::max(ly_max, ly);
    }
  }
  if (lx_max == lx_min) lx_max = lx_min + 1;
  if (ly_max == ly_min) ly_max = ly_min + 1;

  auto X = [&](double eps) {
    return ml + (std::log10(eps) - lx_min) / (lx_max - lx_min) * pw;
  };
  auto Y = [&](double v) {
    return mt + ph - (std::log10(std::max(v, 1e-300)) - ly_min) / (ly_max - ly_min) * ph;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">winning lower bound on N(eps,d), d=" + std::to_string(d) +
         "</text>\n";

  // axes
  svg += "<line x1=\"" + format2(ml) + "\" y1=\"" + format2(mt + ph) + "\" x2=\"" +
         format2(ml + pw) + "\" y2=\"" + format2(mt + ph) + "\" stroke=\"#000000\"/>\n";
  svg += "<line x1=\"" + format2(ml) + "\" y1=\"" + format2(mt) + "\" x2=\"" + format2(ml) +
         "\" y2=\"" + format2(mt + ph) + "\" stroke=\"#000000\"/>\n";

  // decade ticks
  for (int e = static_cast<int>(std::ceil(lx_min)); e <= static_cast<int>(std::floor(lx_max));
       ++e) {
    const double x = ml + (e - lx_min) / (lx_max - lx_min) * pw;
    svg += "<line x1=\"" + format2(x) + "\" y1=\"" + format2(mt + ph) + "\" x2=\"" + format2(x) +
           "\" y2=\"" + format2(mt + ph + 6) + "\" stroke=\"#000000\"/>\n";
    svg += "<text x=\"" + format2(x) + "\" y=\"" + format2(mt + ph + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" +
           std::to_string(e) + "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ly_min)); e <= static_cast<int>(std::floor(ly_max));
       ++e) {
    const double y = mt + ph - (e - ly_min) / (ly_max - ly_min) * ph;
    svg += "<line x1=\"" + format2(ml - 6) + "\" y1=\"" + format2(y) + "\" x2=\"" + format2(ml) +
           "\" y2=\"" + format2(y) + "\" stroke=\"#000000\"/>\n";
    svg += "<text x=\"" + format2(ml - 10) + "\" y=\"" + format2(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" +
           std::to_string(e) + "</text>\n";
  }
  svg += "<text x=\"" + format2(ml + pw / 2) + "\" y=\"" + format2(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">eps</text>\n";

  // one polyline per winning bound, in order of first appearance
  std::vector<std::string> order;
  std::map<std::string, std::string> pts;
  for (const RegionRow& row : rows) {
    if (pts.find(row.winner) == pts.end()) order.push_back(row.winner);
    std::string& p = pts[row.winner];
    if (!p.empty()) p += ' ';
    p += format2(X(row.eps)) + "," + format2(Y(row.value));
  }
  for (const std::string& name : order) {
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(bound_color(name)) +
           "\" stroke-width=\"2\" points=\"" + pts[name] + "\"/>\n";
  }

  // legend
  double ly = mt + 10;
  for (const std::string& name : order) {
    const double lx0 = ml + pw + 14;
    svg += "<rect x=\"" + format2(lx0) + "\" y=\"" + format2(ly - 9) +
           "\" width=\"14\" height=\"10\" fill=\"" + std::string(bound_color(name)) + "\"/>\n";
    svg += "<text x=\"" + format2(lx0 + 20) + "\" y=\"" + format2(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + name + "</text>\n";
    ly += 18;
  }
  svg += "</svg>\n";
  return svg;
}

std::string BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["direction"] = direction == BoundDirection::lower ? "lower" : "upper";
  j["target"] = target == BoundTarget::n_of_eps_d ? "N(eps,d)" : "disp*(n,d)";
  j["value"] = value;
  j["valid"] = valid;
  j["condition"] = condition;
  j["constant_known"] = constant_known;
  if (k_used)
    j["k"] = *k_used;
  else
    j["k"] = nullptr;
  if (part)
    j["part"] = *part;
  else
    j["part"] = nullptr;
  j["trivial"] = trivial;
  return j.dump();
}

std::string bound_reports_to_json(const std::vector<BoundReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += ",";
    out += reports[i].to_json();
  }
  out += "]";
  return out;
}

}  // namespace disp
