#include "bingham/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "bingham/errors.hpp"

namespace bingham {

namespace pt = boost::property_tree;

FluidParams FluidConfig::make() const {
  if (law == "affine") return FluidParams::affine(rho1, rho2, mu1, mu2, alpha1, alpha2);
  if (law == "tabulated") return FluidParams::tabulated(rho1, rho2, table);
  throw ValidationError("unknown coefficient law '" + law + "'");
}

void RunConfig::validate() const {
  grid.make();
  const FluidParams f = fluid.make();
  f.validate();
  scheme.validate(f);
  if (!(scenario.t_end > 0.0)) throw ValidationError("t_end > 0 violated");
  static const std::set<std::string> names{"cavity", "poiseuille", "dambreak", "rest"};
  if (!names.count(scenario.name))
    throw ValidationError("unknown scenario '" + scenario.name + "'");
  static const std::set<std::string> profiles{"uniform", "blob", "layer"};
  if (!profiles.count(scenario.density_profile))
    throw ValidationError("unknown density_profile '" + scenario.density_profile + "'");
  if (scenario.name == "poiseuille") {
    if (!grid.periodic_x) throw ValidationError("poiseuille needs grid.periodic_x = true");
    if (!(scenario.drive > 0.0)) throw ValidationError("poiseuille needs a forcing drive G > 0");
    if (fluid.rho1 != fluid.rho2) throw ValidationError("poiseuille needs constant density");
  }
  if (scenario.name == "dambreak") {
    if (!(fluid.rho2 > fluid.rho1)) throw ValidationError("dambreak needs rho2 > rho1");
    if (!(scenario.blob_radius > 0.0)) throw ValidationError("dambreak needs blob_radius > 0");
  }
  if (output.csv_every < 1) throw ValidationError("csv_every >= 1 violated");
  if (output.snapshot_every < 0) throw ValidationError("snapshot_every >= 0 violated");
}

namespace {

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {
    for (const auto& [section, body] : tree_) {
      if (body.empty() && !body.data().empty())
        throw ParseError(section, "key outside of any section");
      for (const auto& kv : body) unused_.insert(section + "." + kv.first);
    }
  }

  std::optional<std::string> raw(const std::string& key) {
    const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    if (!v) return std::nullopt;
    unused_.erase(key);
    return *v;
  }

  void get(const std::string& key, double& out) {
    if (auto v = raw(key)) out = to_double(key, *v);
  }
  void get(const std::string& key, int& out) {
    if (auto v = raw(key)) {
      const std::string s = trim(*v);
      int value = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError(key, "expected an integer, got '" + s + "'");
      out = value;
    }
  }
  void get(const std::string& key, bool& out) {
    if (auto v = raw(key)) {
      const std::string s = trim(*v);
      if (s == "true" || s == "1" || s == "yes" || s == "on")
        out = true;
      else if (s == "false" || s == "0" || s == "no" || s == "off")
        out = false;
      else
        throw ParseError(key, "expected a boolean, got '" + s + "'");
    }
  }
  void get(const std::string& key, std::string& out) {
    if (auto v = raw(key)) out = trim(*v);
  }

  void finish() const {
    if (!unused_.empty()) throw ParseError(*unused_.begin(), "unknown key");
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  static double to_double(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    double value = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || p != s.data() + s.size())
      throw ParseError(key, "expected a number, got '" + s + "'");
    return value;
  }

 private:
  const pt::ptree& tree_;
  std::set<std::string> unused_;
};

std::vector<std::array<double, 3>> parse_table(const std::string& key, const std::string& text) {
  // "rho:mu:alpha, rho:mu:alpha, ..."
  std::vector<std::array<double, 3>> rows;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Reader::trim(item);
    if (item.empty()) continue;
    std::array<double, 3> row{};
    std::stringstream is(item);
    std::string part;
    int k = 0;
    while (std::getline(is, part, ':')) {
      if (k >= 3) throw ParseError(key, "table row '" + item + "' has more than 3 entries");
      row[k++] = Reader::to_double(key, part);
    }
    if (k != 3) throw ParseError(key, "table row '" + item + "' needs rho:mu:alpha");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError("line " + std::to_string(e.line()), e.message());
  }
  static const std::set<std::string> sections{"grid", "fluid", "scheme", "scenario", "output"};
  for (const auto& kv : tree)
    if (!sections.count(kv.first)) throw ParseError(kv.first, "unknown section");

  Reader rd(tree);
  RunConfig c;
  rd.get("grid.nx", c.grid.nx);
  rd.get("grid.ny", c.grid.ny);
  rd.get("grid.lx", c.grid.lx);
  rd.get("grid.ly", c.grid.ly);
  rd.get("grid.periodic_x", c.grid.periodic_x);

  rd.get("fluid.rho1", c.fluid.rho1);
  c.fluid.rho2 = c.fluid.rho1;
  rd.get("fluid.rho2", c.fluid.rho2);
  rd.get("fluid.mu1", c.fluid.mu1);
  c.fluid.mu2 = c.fluid.mu1;
  rd.get("fluid.mu2", c.fluid.mu2);
  rd.get("fluid.alpha1", c.fluid.alpha1);
  c.fluid.alpha2 = c.fluid.alpha1;
  rd.get("fluid.alpha2", c.fluid.alpha2);
  rd.get("fluid.law", c.fluid.law);
  if (auto t = rd.raw("fluid.table")) c.fluid.table = parse_table("fluid.table", *t);
  if (c.fluid.law == "tabulated" && c.fluid.table.empty())
    throw ParseError("fluid.table", "tabulated law needs a table");

  SchemeParams& s = c.scheme;
  rd.get("scheme.dt", s.dt);
  rd.get("scheme.theta", s.theta);
  std::string r_text;
  rd.get("scheme.r", r_text);
  rd.get("scheme.fp_tol", s.fp_tol);
  rd.get("scheme.fp_max_iter", s.fp_max_iter);
  rd.get("scheme.anderson_depth", s.anderson_depth);
  rd.get("scheme.stability_mode", s.stability_mode);
  rd.get("scheme.momentum_tol", s.momentum_solver.rel_tol);
  rd.get("scheme.increment_tol", s.increment_rel_tol);
  rd.get("scheme.poisson_tol", s.poisson_solver.rel_tol);
  rd.get("scheme.transport_tol", s.transport_solver.rel_tol);
  rd.get("scheme.max_linear_iter", s.momentum_solver.max_iter);

  rd.get("scenario.name", c.scenario.name);
  rd.get("scenario.t_end", c.scenario.t_end);
  rd.get("scenario.u0_amplitude", c.scenario.u0_amplitude);
  rd.get("scenario.forcing_amplitude", c.scenario.forcing_amplitude);
  rd.get("scenario.forcing_omega", c.scenario.forcing_omega);
  rd.get("scenario.density_profile", c.scenario.density_profile);
  rd.get("scenario.blob_x", c.scenario.blob_x);
  rd.get("scenario.blob_y", c.scenario.blob_y);
  rd.get("scenario.blob_radius", c.scenario.blob_radius);
  rd.get("scenario.interface_width", c.scenario.interface_width);
  rd.get("scenario.gravity", c.scenario.gravity);
  rd.get("scenario.drive", c.scenario.drive);
  rd.get("scenario.tol_plug", c.tol_plug);

  rd.get("output.directory", c.output.directory);
  rd.get("output.snapshot_every", c.output.snapshot_every);
  rd.get("output.csv_every", c.output.csv_every);
  rd.finish();

  if (c.scenario.name == "poiseuille" && !tree.get_optional<std::string>(
                                              pt::ptree::path_type("grid.periodic_x", '.')))
    c.grid.periodic_x = true;

  if (!r_text.empty()) {
    if (r_text == "saturate") {
      const FluidParams f = c.fluid.make();
      s.r = SchemeParams::saturating_r(s.theta, f);
    } else {
      s.r = Reader::to_double("scheme.r", r_text);
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << std::boolalpha;
  os << "[grid]\nnx = " << c.grid.nx << "\nny = " << c.grid.ny << "\nlx = " << c.grid.lx
     << "\nly = " << c.grid.ly << "\nperiodic_x = " << c.grid.periodic_x << "\n\n";
  os << "[fluid]\nrho1 = " << c.fluid.rho1 << "\nrho2 = " << c.fluid.rho2
     << "\nmu1 = " << c.fluid.mu1 << "\nmu2 = " << c.fluid.mu2 << "\nalpha1 = " << c.fluid.alpha1
     << "\nalpha2 = " << c.fluid.alpha2 << "\nlaw = " << c.fluid.law << "\n";
  if (!c.fluid.table.empty()) {
    os << "table = ";
    for (std::size_t k = 0; k < c.fluid.table.size(); ++k)
      os << (k ? ", " : "") << c.fluid.table[k][0] << ":" << c.fluid.table[k][1] << ":"
         << c.fluid.table[k][2];
    os << "\n";
  }
  const SchemeParams& s = c.scheme;
  os << "\n[scheme]\ndt = " << s.dt << "\nr = " << s.r << "\ntheta = " << s.theta
     << "\nfp_tol = " << s.fp_tol << "\nfp_max_iter = " << s.fp_max_iter << "\nanderson_depth = " << s.anderson_depth
     << "\nstability_mode = " << s.stability_mode << "\nmomentum_tol = " << s.momentum_solver.rel_tol
     << "\nincrement_tol = " << s.increment_rel_tol << "\npoisson_tol = " << s.poisson_solver.rel_tol
     << "\ntransport_tol = " << s.transport_solver.rel_tol
     << "\nmax_linear_iter = " << s.momentum_solver.max_iter << "\n\n";
  const ScenarioConfig& sc = c.scenario;
  os << "[scenario]\nname = " << sc.name << "\nt_end = " << sc.t_end
     << "\nu0_amplitude = " << sc.u0_amplitude << "\nforcing_amplitude = " << sc.forcing_amplitude
     << "\nforcing_omega = " << sc.forcing_omega << "\ndensity_profile = " << sc.density_profile
     << "\nblob_x = " << sc.blob_x << "\nblob_y = " << sc.blob_y
     << "\nblob_radius = " << sc.blob_radius << "\ninterface_width = " << sc.interface_width
     << "\ngravity = " << sc.gravity << "\ndrive = " << sc.drive << "\ntol_plug = " << c.tol_plug
     << "\n\n";
  os << "[output]\ndirectory = " << c.output.directory
     << "\nsnapshot_every = " << c.output.snapshot_every << "\ncsv_every = " << c.output.csv_every
     << "\n";
  return os.str();
}

}  // namespace bingham
