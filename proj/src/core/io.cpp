#include "pmech/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "pmech/errors.hpp"

namespace pmech {

std::string format_double(double v) {
  char buf[64];
  if (v == 0) v = 0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string monomial_label(const Monomial& m) {
  std::string s;
  std::size_t n = m.dim();
  auto idx = [&](std::size_t j) { return n > 1 ? std::to_string(j + 1) : std::string(); };
  for (std::size_t j = 0; j < n; ++j) s += "q" + idx(j) + "^" + std::to_string(m.q[j]) + " ";
  for (std::size_t j = 0; j < n; ++j) s += "p" + idx(j) + "^" + std::to_string(m.p[j]) + " ";
  s += "hbar^" + std::to_string(m.hbar);
  return s;
}

void write_state_csv(std::ostream& os, const StateVector& v) {
  const PhaseGrid& g = v.grid();
  os << "q,p,re,im\n";
  for (int iq = 0; iq < g.size(); ++iq)
    for (int ip = 0; ip < g.size(); ++ip) {
      cdouble z = v.at(iq, ip);
      os << format_double(g.node(iq)) << ',' << format_double(g.node(ip)) << ','
         << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const Trajectory<Symbol>& traj) {
  std::map<Monomial, bool, CanonicalOrder> cols;
  for (const auto& s : traj.payload)
    for (const auto& [m, c] : s.terms()) cols[m] = cols[m] || !c.is_real();
  os << "t";
  for (const auto& [m, imag] : cols) {
    os << ',' << monomial_label(m);
    if (imag) os << ',' << monomial_label(m) << " im";
  }
  os << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << format_double(traj.times[i]);
    for (const auto& [m, imag] : cols) {
      cdouble c = traj.payload[i].coefficient(m).to_complex();
      os << ',' << format_double(c.real());
      if (imag) os << ',' << format_double(c.imag());
    }
    os << '\n';
  }
}

void write_limit_scan_csv(std::ostream& os, const std::vector<LimitScanRow>& rows) {
  os << "h,value_re,value_im,classical_value,abs_error\n";
  for (const auto& r : rows)
    os << format_double(r.h) << ',' << format_double(r.value.real()) << ','
       << format_double(r.value.imag()) << ',' << format_double(r.classical.real()) << ','
       << format_double(r.abs_error) << '\n';
}

void write_resonance_csv(std::ostream& os, const std::vector<ResonanceSample>& rows) {
  os << "t,envelope\n";
  for (const auto& r : rows) os << format_double(r.t) << ',' << format_double(r.envelope) << '\n';
}

void write_resonance_svg(std::ostream& os, const std::vector<ResonanceSample>& rows,
                         const std::string& title) {
  const double width = 640, height = 400, left = 60, right = 20, top = 40, bottom = 50;
  double tmax = 0, emax = 0;
  for (const auto& r : rows) {
    tmax = std::max(tmax, r.t);
    emax = std::max(emax, r.envelope);
  }
  if (tmax <= 0) tmax = 1;
  if (emax <= 0) emax = 1;
  auto px = [&](double t) { return left + (width - left - right) * t / tmax; };
  auto py = [&](double e) { return height - bottom - (height - top - bottom) * e / emax; };
  char buf[128];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
        "viewBox=\"0 0 640 400\">\n";
  os << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" ", left,
                height - bottom, width - right, height - bottom);
  os << buf << "stroke=\"black\"/>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" ", left,
                top, left, height - bottom);
  os << buf << "stroke=\"black\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(rows[i].t),
                  py(rows[i].envelope));
    os << buf;
  }
  os << "\"/>\n";
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '<')
        out += "&lt;";
      else if (c == '>')
        out += "&gt;";
      else if (c == '&')
        out += "&amp;";
      else
        out += c;
    }
    return out;
  };
  os << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<text x=\"320\" y=\"390\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\">t (max "
     << format_double(tmax) << ")</text>\n";
  os << "<text x=\"14\" y=\"200\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\" transform=\"rotate(-90 14 200)\">envelope (max "
     << format_double(emax) << ")</text>\n";
  os << "</svg>\n";
}

double max_coefficient_difference(const Trajectory<Symbol>& a, const Trajectory<Symbol>& b) {
  if (a.times.size() != b.times.size())
    throw DimensionError("trajectories have different sample counts");
  double worst = 0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-9 * std::max(1.0, std::abs(a.times[i])))
      throw DimensionError("trajectories are sampled at different times");
    std::set<Monomial, CanonicalOrder> keys;
    for (const auto& [m, c] : a.payload[i].terms()) keys.insert(m);
    for (const auto& [m, c] : b.payload[i].terms()) keys.insert(m);
    for (const auto& m : keys) {
      cdouble d = a.payload[i].coefficient(m).to_complex() - b.payload[i].coefficient(m).to_complex();
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

}  // namespace pmech
