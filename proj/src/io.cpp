#include "ogk/io.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "ogk/errors.hpp"

namespace ogk::io {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("bad JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << body;
}

cplx parse_complex(const json& j) {
  if (j.is_number()) return cplx{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return cplx{j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("complex values are numbers or [re, im] pairs");
}

}  // namespace

FiniteGroupoid load_groupoid(const std::string& path) {
  const json j = parse_file(path);
  try {
    const int n = j.at("elements").get<int>();
    std::vector<int> r = j.at("r").get<std::vector<int>>();
    std::vector<int> d = j.at("d").get<std::vector<int>>();
    std::vector<int> inv = j.at("inv").get<std::vector<int>>();
    std::vector<int> units = j.at("units").get<std::vector<int>>();
    std::vector<std::array<int, 3>> prods;
    for (const auto& t : j.at("product")) {
      if (!t.is_array() || t.size() != 3)
        throw ConfigError("product entries are [x, y, xy] triples");
      prods.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    return FiniteGroupoid(n, std::move(r), std::move(d), std::move(inv), std::move(prods),
                          std::move(units));
  } catch (const json::exception& e) {
    throw ConfigError("groupoid file '" + path + "': " + e.what());
  }
}

void save_groupoid(const FiniteGroupoid& g, const std::string& path) {
  json j;
  j["elements"] = g.size();
  std::vector<int> r, d, inv;
  for (int x = 0; x < g.size(); ++x) {
    r.push_back(g.r(x));
    d.push_back(g.d(x));
    inv.push_back(g.inverse(x));
  }
  j["r"] = r;
  j["d"] = d;
  j["inv"] = inv;
  j["units"] = g.units();
  json prods = json::array();
  for (const auto& t : g.product_triples()) prods.push_back({t[0], t[1], t[2]});
  j["product"] = prods;
  write_file(path, j.dump(2) + "\n");
}

HaarSystem load_haar(const std::string& path, const FiniteGroupoid& g) {
  const json j = parse_file(path);
  std::vector<std::vector<double>> weights(static_cast<std::size_t>(g.unit_count()));
  for (const auto& [key, value] : j.items()) {
    const int unit = std::atoi(key.c_str());
    const int ui = g.unit_index(unit);
    weights[static_cast<std::size_t>(ui)] = value.get<std::vector<double>>();
  }
  for (int ui = 0; ui < g.unit_count(); ++ui)
    if (weights[static_cast<std::size_t>(ui)].empty())
      throw ConfigError("haar file missing weights for unit " +
                        std::to_string(g.units()[static_cast<std::size_t>(ui)]));
  return HaarSystem(std::move(weights));
}

Section load_section(const std::string& path, const FiniteGroupoid& g) {
  const json j = parse_file(path);
  Section s = Section::zeros(g);
  for (const auto& [key, value] : j.items()) {
    const int unit = std::atoi(key.c_str());
    const int ui = g.unit_index(unit);
    auto& fiber = s.fibers[static_cast<std::size_t>(ui)];
    if (value.size() != fiber.size())
      throw ConfigError("section fiber for unit " + key + " has length " +
                        std::to_string(value.size()) + ", expected " +
                        std::to_string(fiber.size()));
    for (std::size_t k = 0; k < fiber.size(); ++k) fiber[k] = parse_complex(value[k]);
  }
  return s;
}

void save_section(const Section& s, const FiniteGroupoid& g, const std::string& path) {
  json j = json::object();
  for (int ui = 0; ui < g.unit_count(); ++ui) {
    json fiber = json::array();
    for (const cplx& v : s.fibers[static_cast<std::size_t>(ui)])
      fiber.push_back({v.real(), v.imag()});
    j[std::to_string(g.units()[static_cast<std::size_t>(ui)])] = fiber;
  }
  write_file(path, j.dump(2) + "\n");
}

ParametrizedFamily load_family(const std::string& path) {
  const json j = parse_file(path);
  ParametrizedFamily fam;
  fam.name = j.value("name", path);

  const json& fiber = j.at("fiber");
  if (fiber.contains("cyclic")) {
    fam.fiber = zoo::cyclic(fiber.at("cyclic").get<int>());
  } else if (fiber.contains("cayley")) {
    CayleyTable t;
    t.mul = fiber.at("cayley").get<std::vector<std::vector<int>>>();
    fam.fiber = t;
  } else {
    throw ConfigError("family fiber needs 'cyclic' or 'cayley'");
  }

  const json& weight = j.at("weight");
  if (weight.at("type") == "affine") {
    const double a = weight.at("a").get<double>();
    const double b = weight.at("b").get<double>();
    fam.weight = [a, b](double u) { return a + b * u; };
  } else {
    throw ConfigError("family weight type must be 'affine'");
  }

  const json& section = j.at("section");
  const std::string stype = section.at("type").get<std::string>();
  if (stype == "constant") {
    const cplx c{section.value("re", 1.0), section.value("im", 0.0)};
    fam.section = [c](double, int) { return c; };
  } else if (stype == "character") {
    const int index = section.at("index").get<int>();
    const double slope = section.value("slope", 0.0);
    const int order = fam.fiber.order();
    fam.section = [index, slope, order](double u, int t) {
      const double arg = 2.0 * std::numbers::pi * index * t / order;
      return (1.0 + slope * u) * cplx{std::cos(arg), std::sin(arg)};
    };
  } else {
    throw ConfigError("family section type must be 'constant' or 'character'");
  }
  return fam;
}

FiniteGroupoid groupoid_from_arg(const std::string& arg) {
  if (arg.rfind("zoo:", 0) == 0) return zoo::groupoid_by_id(arg.substr(4));
  return load_groupoid(arg);
}

HaarSystem haar_from_arg(const std::string& arg, const FiniteGroupoid& g) {
  if (arg.empty() || arg == "counting") return HaarSystem::counting(g);
  if (arg.rfind("weighted:", 0) == 0) {
    std::vector<double> m;
    std::stringstream ss(arg.substr(9));
    std::string part;
    while (std::getline(ss, part, ',')) m.push_back(std::atof(part.c_str()));
    return HaarSystem::from_unit_masses(g, m);
  }
  return load_haar(arg, g);
}

namespace {

json report_json(const std::vector<SuiteReport>& reports, bool all_pass) {
  json j;
  j["schema_version"] = 1;
  j["pass"] = all_pass;
  json suites = json::array();
  for (const auto& rep : reports) {
    json s;
    s["suite"] = rep.suite;
    s["groupoid"] = rep.groupoid_id;
    s["young_pair"] = rep.young_pair;
    s["seed"] = rep.seed;
    s["trials"] = rep.trials;
    s["pass"] = rep.pass();
    s["wall_time_ms"] = rep.wall_ms;
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json cj;
      cj["name"] = c.name;
      cj["slack"] = c.slack;
      cj["tolerance"] = c.tolerance;
      cj["pass"] = c.pass;
      if (!c.witness.empty()) cj["witness"] = c.witness;
      checks.push_back(cj);
    }
    s["checks"] = checks;
    suites.push_back(s);
  }
  j["suites"] = suites;
  return j;
}

}  // namespace

std::string report_to_json(const std::vector<SuiteReport>& reports, bool all_pass) {
  return report_json(reports, all_pass).dump(2) + "\n";
}

void write_report_json(const std::vector<SuiteReport>& reports, bool all_pass,
                       const std::string& path) {
  write_file(path, report_to_json(reports, all_pass));
}

void write_report_csv(const std::vector<SuiteReport>& reports, const std::string& path) {
  std::ostringstream os;
  os << "suite,check,slack,tolerance,pass\n";
  os.precision(17);
  for (const auto& rep : reports)
    for (const auto& c : rep.checks)
      os << rep.suite << "," << c.name << "," << c.slack << "," << c.tolerance << ","
         << (c.pass ? 1 : 0) << "\n";
  write_file(path, os.str());
}

void write_profile_csv(const NormProfile& profile, const std::string& path) {
  std::ostringstream os;
  os << "u,norm,adjacent_diff\n";
  os.precision(17);
  for (std::size_t i = 0; i < profile.u.size(); ++i) {
    os << profile.u[i] << "," << profile.norm[i] << ",";
    if (i + 1 < profile.u.size()) os << profile.adjacent_diff[i];
    os << "\n";
  }
  write_file(path, os.str());
}

}  // namespace ogk::io
