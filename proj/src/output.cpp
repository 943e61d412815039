#include "skirental/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "skirental/learner.hpp"

namespace skirental {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows) {
  out << kCompareHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.sigma) << ',' << to_string(r.algorithm) << ',' << format_double(r.lambda) << ','
        << format_double(r.mean_cr) << ',' << format_double(r.stderr_cr) << ',' << r.trials << '\n';
  }
}

void write_regret_csv(std::ostream& out, std::span<const RegretCurve> curves) {
  out << kRegretHeader << '\n';
  for (const auto& c : curves) {
    for (std::size_t t = 0; t < c.regret.size(); ++t) {
      out << c.config_id << ',' << (t + 1) << ',' << format_double(c.regret[t]) << ','
          << format_double(c.regret_x[t]) << ',' << format_double(c.regret_b[t]) << '\n';
    }
  }
}

void write_regret_configs_csv(std::ostream& out, std::span<const RegretScenario> scenarios,
                              std::span<const RegretCurve> curves) {
  if (scenarios.size() != curves.size()) throw std::invalid_argument("scenario/curve count mismatch");
  out << kRegretConfigsHeader << '\n';
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& l = scenarios[i].learner;
    const auto& c = curves[i];
    out << c.config_id << ',' << format_double(l.lambda) << ',' << l.ski_experts << ',' << l.buy_experts << ','
        << scenarios[i].seeds << ',' << fingerprint(l) << ','
        << format_double(c.regret.empty() ? 0.0 : c.regret.back()) << ','
        << format_double(c.final_regret_stderr) << ',' << format_double(c.max_round_loss) << ','
        << format_double(c.min_robustness_radius) << '\n';
  }
}

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt1(double v) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss.precision(4);
  ss << v;
  return ss.str();
}

}  // namespace

void write_line_chart_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                          const std::string& y_label, std::span<const ChartSeries> series) {
  constexpr double W = 720, H = 440, left = 70, right = 180, top = 40, bottom = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) {
      if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return top + (1.0 - (v - y0) / (y1 - y0)) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
      << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    out << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << fmt1(fx)
        << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">" << fmt1(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
      << escape_xml(x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(y_label) << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!std::isfinite(s.y[k])) continue;
      out << fmt1(px(s.x[k])) << ',' << fmt1(py(s.y[k])) << ' ';
    }
    out << "\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(i);
    out << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw + 30 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + pw + 34 << "\" y=\"" << ly << "\">" << escape_xml(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<ChartSeries> compare_chart_series(std::span<const CompareRow> rows) {
  std::vector<ChartSeries> out;
  for (const auto& r : rows) {
    const std::string label = std::string(to_string(r.algorithm)) + " lambda=" + fmt1(r.lambda);
    auto it = std::find_if(out.begin(), out.end(), [&](const ChartSeries& s) { return s.label == label; });
    if (it == out.end()) it = out.insert(out.end(), ChartSeries{label, {}, {}});
    it->x.push_back(r.sigma);
    it->y.push_back(r.mean_cr);
  }
  return out;
}

std::vector<ChartSeries> regret_chart_series(std::span<const RegretCurve> curves, std::size_t max_points) {
  std::vector<ChartSeries> out;
  for (const auto& c : curves) {
    ChartSeries s{"config " + std::to_string(c.config_id), {}, {}};
    const std::size_t n = c.regret.size();
    const std::size_t stride = std::max<std::size_t>(1, (n + max_points - 1) / std::max<std::size_t>(max_points, 1));
    for (std::size_t t = 0; t < n; t += stride) {
      s.x.push_back(static_cast<double>(t + 1));
      s.y.push_back(c.regret[t]);
    }
    if (n > 0 && (n - 1) % stride != 0) {
      s.x.push_back(static_cast<double>(n));
      s.y.push_back(c.regret.back());
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace skirental
