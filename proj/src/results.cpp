#include "specshare/results.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace specshare
{
namespace
{

std::string xml_escape(const std::string& s)
{
  std::string out;
  out.reserve(s.size());
  for (char c : s)
  {
    switch (c)
    {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

// Fixed-precision text for SVG coordinates.
std::string px(double v)
{
  std::array<char, 32> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
  return std::string(buf.data(), r.ptr);
}

// Tick step of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target)
{
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag)
      return m * mag;
  return 10.0 * mag;
}

struct Axis
{
  double lo, hi, step;
};

Axis make_axis(double lo, double hi, int target)
{
  if (!(hi > lo))
  {
    lo -= 1.0;
    hi += 1.0;
  }
  const double step = nice_step(hi - lo, target);
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
constexpr std::array<const char*, 4> dashes{"", "8 4", "2 3", "10 3 2 3"};

}  // namespace

double watts_to_dbm(double watts)
{
  return 10.0 * std::log10(watts) + 30.0;
}

double dbm_to_watts(double dbm)
{
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

std::string format_number(double v)
{
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  if (std::isnan(v))
    return "nan";
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

ResultRow make_row(std::string model, double intensity_m2, double r_exc_m, double mean_watts, double error_watts,
                   double h_bs_m)
{
  if (!(mean_watts > 0.0) || !std::isfinite(mean_watts))
    throw std::invalid_argument("make_row: mean must be finite and > 0 for a dBm value");
  ResultRow r;
  r.model = std::move(model);
  r.lambda_bs_per_km2 = intensity_m2 * 1e6;
  r.r_exc_km = r_exc_m / 1e3;
  r.mean_dbm = watts_to_dbm(mean_watts);
  r.error_db = 10.0 * std::log10(1.0 + std::max(0.0, error_watts) / mean_watts);
  r.elevation_parameter = h_bs_m * std::sqrt(pi * intensity_m2);
  return r;
}

void write_results_csv(std::ostream& os, std::span<const ResultRow> rows)
{
  os << "model,lambda_bs_per_km2,r_exc_km,mean_dbm,error_db,elevation_parameter,eta\n";
  for (const auto& r : rows)
  {
    os << r.model << ',' << format_number(r.lambda_bs_per_km2) << ',' << format_number(r.r_exc_km) << ','
       << format_number(r.mean_dbm) << ',' << format_number(r.error_db) << ','
       << format_number(r.elevation_parameter) << ',' << (r.eta ? format_number(*r.eta) : std::string()) << '\n';
  }
}

void write_timings_csv(std::ostream& os, std::span<const ResultRow> rows)
{
  os << "model,lambda_bs_per_km2,r_exc_km,wall_time_s\n";
  for (const auto& r : rows)
    os << r.model << ',' << format_number(r.lambda_bs_per_km2) << ',' << format_number(r.r_exc_km) << ','
       << format_number(r.wall_time_s) << '\n';
}

std::vector<EtaRow> eta_table(std::span<const NetworkScenario> scenarios, const CircumradiusOptions& options)
{
  std::vector<EtaRow> rows;
  rows.reserve(scenarios.size());
  for (const auto& s : scenarios)
    rows.push_back({s.elevation_parameter(), eta_ratio(s, CircumradiusDistribution(s.intensity_bs, options))});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const EtaRow& a, const EtaRow& b) { return a.elevation_parameter < b.elevation_parameter; });
  return rows;
}

void write_eta_csv(std::ostream& os, std::span<const EtaRow> rows)
{
  os << "elevation_parameter,eta\n";
  for (const auto& r : rows)
    os << format_number(r.elevation_parameter) << ',' << format_number(r.eta) << '\n';
}

std::string emit_eta_table(std::span<const NetworkScenario> scenarios, const CircumradiusOptions& options)
{
  if (scenarios.empty())
    throw std::invalid_argument("emit_eta_table: need at least one scenario");
  std::ostringstream os;
  const auto rows = eta_table(scenarios, options);
  write_eta_csv(os, rows);
  return os.str();
}

void write_sweep_svg(std::ostream& os, std::span<const ResultRow> rows, const std::string& title)
{
  constexpr double width = 860, height = 540;
  constexpr double left = 80, right = 230, top = 50, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  // one series per (model, intensity), in first-seen order
  struct Series
  {
    std::string model;
    double lambda;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  std::vector<std::string> models;
  std::vector<double> lambdas;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
  for (const auto& r : rows)
  {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.model == r.model && s.lambda == r.lambda_bs_per_km2; });
    if (it == series.end())
    {
      series.push_back({r.model, r.lambda_bs_per_km2, {}});
      it = series.end() - 1;
    }
    it->pts.emplace_back(r.r_exc_km, r.mean_dbm);
    if (std::find(models.begin(), models.end(), r.model) == models.end())
      models.push_back(r.model);
    if (std::find(lambdas.begin(), lambdas.end(), r.lambda_bs_per_km2) == lambdas.end())
      lambdas.push_back(r.lambda_bs_per_km2);
    x_lo = std::min(x_lo, r.r_exc_km);
    x_hi = std::max(x_hi, r.r_exc_km);
    y_lo = std::min(y_lo, r.mean_dbm);
    y_hi = std::max(y_hi, r.mean_dbm);
  }
  if (rows.empty())
  {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  const Axis xa = make_axis(x_lo, x_hi, 6);
  const Axis ya = make_axis(y_lo, y_hi, 8);
  auto sx = [&](double x) { return left + (x - xa.lo) / (xa.hi - xa.lo) * plot_w; };
  auto sy = [&](double y) { return top + (ya.hi - y) / (ya.hi - ya.lo) * plot_h; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << px(left + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
     << xml_escape(title) << "</text>\n";

  // grid and ticks
  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double x = xa.lo; x <= xa.hi + 1e-9 * xa.step; x += xa.step)
    os << "<line x1=\"" << px(sx(x)) << "\" y1=\"" << px(top) << "\" x2=\"" << px(sx(x)) << "\" y2=\""
       << px(top + plot_h) << "\"/>\n";
  for (double y = ya.lo; y <= ya.hi + 1e-9 * ya.step; y += ya.step)
    os << "<line x1=\"" << px(left) << "\" y1=\"" << px(sy(y)) << "\" x2=\"" << px(left + plot_w) << "\" y2=\""
       << px(sy(y)) << "\"/>\n";
  os << "</g>\n";
  os << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(plot_w) << "\" height=\""
     << px(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double x = xa.lo; x <= xa.hi + 1e-9 * xa.step; x += xa.step)
    os << "<text x=\"" << px(sx(x)) << "\" y=\"" << px(top + plot_h + 18) << "\" text-anchor=\"middle\">"
       << format_number(std::round(x * 1e6) / 1e6) << "</text>\n";
  for (double y = ya.lo; y <= ya.hi + 1e-9 * ya.step; y += ya.step)
    os << "<text x=\"" << px(left - 8) << "\" y=\"" << px(sy(y) + 4) << "\" text-anchor=\"end\">"
       << format_number(std::round(y * 1e6) / 1e6) << "</text>\n";
  os << "<text x=\"" << px(left + plot_w / 2) << "\" y=\"" << px(height - 18)
     << "\" text-anchor=\"middle\">exclusion radius (km)</text>\n"
     << "<text transform=\"translate(22 " << px(top + plot_h / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">mean interference (dBm)</text>\n";

  // curves
  for (std::size_t i = 0; i < series.size(); ++i)
  {
    auto& s = series[i];
    std::sort(s.pts.begin(), s.pts.end());
    const auto mi = static_cast<std::size_t>(std::find(models.begin(), models.end(), s.model) - models.begin());
    const auto li = static_cast<std::size_t>(std::find(lambdas.begin(), lambdas.end(), s.lambda) - lambdas.begin());
    const char* color = palette[mi % palette.size()];
    const char* dash = dashes[li % dashes.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
    if (*dash)
      os << " stroke-dasharray=\"" << dash << '"';
    os << " points=\"";
    for (std::size_t k = 0; k < s.pts.size(); ++k)
      os << (k ? " " : "") << px(sx(s.pts[k].first)) << ',' << px(sy(s.pts[k].second));
    os << "\"/>\n";
    for (const auto& [x, y] : s.pts)
      os << "<circle cx=\"" << px(sx(x)) << "\" cy=\"" << px(sy(y)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";

    // legend entry
    const double ly = top + 10 + 18.0 * static_cast<double>(i);
    const double lx = left + plot_w + 16;
    os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 28) << "\" y2=\"" << px(ly)
       << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
    if (*dash)
      os << " stroke-dasharray=\"" << dash << '"';
    os << "/>\n<text x=\"" << px(lx + 34) << "\" y=\"" << px(ly + 4) << "\">" << xml_escape(s.model)
       << ", &#955;=" << format_number(s.lambda) << "/km&#178;</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace specshare
