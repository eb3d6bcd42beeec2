#include "specshare/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace specshare
{
namespace
{

using nlohmann::json;

// Walks one object, recording which keys were consumed so leftovers can be
// reported as unknown.
class Section
{
public:
  Section(const json& j, std::string path)
      : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
      throw ConfigError(where() + ": expected an object");
  }

  const json* find(const std::string& key)
  {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_number())
        throw ConfigError(name(key) + ": expected a number");
      out = v->get<double>();
      if (!std::isfinite(out))
        throw ConfigError(name(key) + ": must be finite");
    }
  }

  void integer(const std::string& key, int& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_number_integer())
        throw ConfigError(name(key) + ": expected an integer");
      const auto x = v->get<long long>();
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(name(key) + ": out of range");
      out = static_cast<int>(x);
    }
  }

  void seed(const std::string& key, std::uint64_t& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0))
        throw ConfigError(name(key) + ": expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void text(const std::string& key, std::string& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_string())
        throw ConfigError(name(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void numbers(const std::string& key, std::vector<double>& out)
  {
    if (const json* v = find(key))
      out = number_list(*v, name(key));
  }

  void strings(const std::string& key, std::vector<std::string>& out)
  {
    if (const json* v = find(key))
    {
      if (!v->is_array())
        throw ConfigError(name(key) + ": expected a list of strings");
      out.clear();
      for (const auto& e : *v)
      {
        if (!e.is_string())
          throw ConfigError(name(key) + ": expected a list of strings");
        out.push_back(e.get<std::string>());
      }
    }
  }

  Section child(const std::string& key)
  {
    static const json empty = json::object();
    const json* v = find(key);
    return Section(v ? *v : empty, name(key));
  }

  void finish() const
  {
    for (const auto& item : j_.items())
      if (!seen_.count(item.key()))
        throw ConfigError("unknown key " + name(item.key()));
  }

  [[nodiscard]] std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  static std::vector<double> number_list(const json& v, const std::string& what)
  {
    if (!v.is_array())
      throw ConfigError(what + ": expected a list of numbers");
    std::vector<double> out;
    for (const auto& e : v)
    {
      if (!e.is_number())
        throw ConfigError(what + ": expected a list of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

private:
  [[nodiscard]] std::string where() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// A list, or {"start", "stop", "step"} with stop included.
std::vector<double> parse_range(Section& parent, const std::string& key, std::vector<double> fallback)
{
  const json* v = parent.find(key);
  if (!v)
    return fallback;
  const std::string what = parent.name(key);
  if (v->is_array())
    return Section::number_list(*v, what);
  Section r(*v, what);
  double start = std::numeric_limits<double>::quiet_NaN(), stop = start, step = start;
  r.number("start", start);
  r.number("stop", stop);
  r.number("step", step);
  r.finish();
  if (std::isnan(start) || std::isnan(stop) || std::isnan(step))
    throw ConfigError(what + ": a range needs start, stop and step");
  if (!(step > 0.0) || stop < start)
    throw ConfigError(what + ": need step > 0 and stop >= start");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12))) + 1;
  if (n > 100'000)
    throw ConfigError(what + ": range has too many points");
  for (long i = 0; i < n; ++i)
    out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void require(bool ok, const std::string& message)
{
  if (!ok)
    throw ConfigError(message);
}

}  // namespace

NetworkScenario ScenarioConfig::scenario(double intensity_m2, double r_exc_m) const
{
  NetworkScenario s;
  s.bs_array = ArrayGeometry(bs.n_az, bs.n_el, bs.height_m);
  s.radar_array = ArrayGeometry(radar.n_az, radar.n_el, radar.height_m);
  s.radar_scan = BeamDirection::from_degrees(radar.scan_az_deg, radar.scan_el_deg);
  s.dl.k_users = downlink.k_users;
  s.dl.p_bs_watts = downlink.p_bs_watts;
  if (pathloss.variant == "uma-los")
    s.pathloss = PathlossModel::uma_los(fc_ghz, bs.height_m, radar.height_m);
  else
    s.pathloss = PathlossModel::reference(std::pow(10.0, -pathloss.pl_r0_db / 10.0), pathloss.alpha, bs.height_m,
                                          radar.height_m);
  s.intensity_bs = intensity_m2;
  s.r_exc_m = r_exc_m;
  s.r_net_m = network.r_net_km * 1e3;
  return s;
}

CircumradiusOptions ScenarioConfig::circumradius_options() const
{
  CircumradiusOptions o;
  o.series_terms = distribution.k_max;
  o.simplex_samples = distribution.simplex_samples;
  return o;
}

CircumradiusMode ScenarioConfig::mode() const
{
  const auto m = parse_circumradius_mode(simulation.circumradius_mode);
  if (!m)
    throw ConfigError("simulation.circumradius_mode: unknown mode '" + simulation.circumradius_mode + "'");
  return *m;
}

bool ScenarioConfig::wants(const std::string& format) const
{
  return std::find(output.formats.begin(), output.formats.end(), format) != output.formats.end();
}

void validate(const ScenarioConfig& c)
{
  require(c.fc_ghz > 0.0, "fc_ghz: must be > 0");
  require(c.radar.n_az >= 1 && c.radar.n_el >= 1, "radar: element counts must be >= 1");
  require(c.bs.n_az >= 1 && c.bs.n_el >= 1, "bs: element counts must be >= 1");
  require(c.radar.height_m >= 0.0 && c.bs.height_m >= 0.0, "heights must be >= 0");
  require(c.bs.height_m >= c.radar.height_m, "bs.height_m: must not be below radar.height_m");
  require(c.radar.scan_az_deg >= -90.0 && c.radar.scan_az_deg < 90.0, "radar.scan_az_deg: must be in [-90, 90)");
  require(c.radar.scan_el_deg >= -90.0 && c.radar.scan_el_deg <= 90.0, "radar.scan_el_deg: must be in [-90, 90]");

  require(!c.network.lambda_bs_per_km2.empty(), "network.lambda_bs_per_km2: must not be empty");
  for (double l : c.network.lambda_bs_per_km2)
    require(l > 0.0 && std::isfinite(l), "network.lambda_bs_per_km2: values must be finite and > 0");
  require(!c.network.r_exc_km.empty(), "network.r_exc_km: must not be empty");
  for (double r : c.network.r_exc_km)
  {
    require(r > 0.0 && std::isfinite(r), "network.r_exc_km: values must be finite and > 0");
    require(r < c.network.r_net_km, "network.r_exc_km: values must be below network.r_net_km");
  }

  require(c.downlink.k_users >= 1, "downlink.k_users: must be >= 1");
  require(c.downlink.p_bs_watts > 0.0, "downlink.p_bs_watts: must be > 0");

  if (c.pathloss.variant == "uma-los")
  {
    require(c.pathloss.alpha == 4.0, "pathloss.alpha: the uma-los variant has a fixed exponent of 4");
    require(c.bs.height_m != c.radar.height_m, "pathloss: uma-los needs distinct BS and radar heights");
  }
  else if (c.pathloss.variant == "reference")
  {
    require(c.pathloss.alpha > 0.0, "pathloss.alpha: must be > 0");
  }
  else
  {
    throw ConfigError("pathloss.variant: expected 'uma-los' or 'reference', got '" + c.pathloss.variant + "'");
  }
  require(!(std::isinf(c.network.r_net_km) && c.pathloss.alpha <= 2.0),
          "pathloss.alpha: an infinite network (r_net_km = inf) converges only for alpha > 2");

  require(c.distribution.k_max >= 1 && c.distribution.k_max <= 40, "distribution.k_max: must be in [1, 40]");
  require(c.distribution.simplex_samples >= 1000, "distribution.simplex_samples: must be >= 1000");

  require(c.simulation.n_realizations >= 1, "simulation.n_realizations: must be >= 1");
  (void)c.mode();

  require(!c.eta.elevation_parameters.empty(), "eta.elevation_parameters: must not be empty");
  for (double x : c.eta.elevation_parameters)
    require(x > 0.0 && std::isfinite(x), "eta.elevation_parameters: values must be finite and > 0");

  require(!c.output.directory.empty(), "output.directory: must not be empty");
  for (const auto& f : c.output.formats)
    require(f == "csv" || f == "svg", "output.formats: unknown format '" + f + "'");
}

ScenarioConfig parse_config(const std::string& json_text)
{
  json doc;
  try
  {
    doc = json::parse(json_text);
  }
  catch (const json::parse_error& e)
  {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }

  ScenarioConfig c;
  Section root(doc, "");
  root.number("fc_ghz", c.fc_ghz);
  {
    auto s = root.child("radar");
    s.integer("n_az", c.radar.n_az);
    s.integer("n_el", c.radar.n_el);
    s.number("height_m", c.radar.height_m);
    s.number("scan_az_deg", c.radar.scan_az_deg);
    s.number("scan_el_deg", c.radar.scan_el_deg);
    s.finish();
  }
  {
    auto s = root.child("bs");
    s.integer("n_az", c.bs.n_az);
    s.integer("n_el", c.bs.n_el);
    s.number("height_m", c.bs.height_m);
    s.finish();
  }
  {
    auto s = root.child("network");
    s.numbers("lambda_bs_per_km2", c.network.lambda_bs_per_km2);
    c.network.r_exc_km = parse_range(s, "r_exc_km", c.network.r_exc_km);
    if (const json* v = s.find("r_net_km"))
    {
      if (v->is_string() && v->get<std::string>() == "inf")
        c.network.r_net_km = std::numeric_limits<double>::infinity();
      else if (v->is_number())
        c.network.r_net_km = v->get<double>();
      else
        throw ConfigError("network.r_net_km: expected a number or \"inf\"");
    }
    s.finish();
  }
  {
    auto s = root.child("downlink");
    s.integer("k_users", c.downlink.k_users);
    s.number("p_bs_watts", c.downlink.p_bs_watts);
    s.finish();
  }
  {
    auto s = root.child("pathloss");
    s.text("variant", c.pathloss.variant);
    s.number("alpha", c.pathloss.alpha);
    s.number("pl_r0_db", c.pathloss.pl_r0_db);
    s.finish();
  }
  {
    auto s = root.child("distribution");
    s.integer("k_max", c.distribution.k_max);
    s.integer("simplex_samples", c.distribution.simplex_samples);
    s.finish();
  }
  {
    auto s = root.child("simulation");
    s.integer("n_realizations", c.simulation.n_realizations);
    s.seed("master_seed", c.simulation.master_seed);
    s.text("circumradius_mode", c.simulation.circumradius_mode);
    s.finish();
  }
  {
    auto s = root.child("eta");
    s.numbers("elevation_parameters", c.eta.elevation_parameters);
    s.finish();
  }
  {
    auto s = root.child("output");
    s.text("directory", c.output.directory);
    s.strings("formats", c.output.formats);
    s.finish();
  }
  root.finish();
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace specshare
