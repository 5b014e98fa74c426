// roofkit command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 invariant violation (invalid channel, state or parameter).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "roofkit/entanglement.hpp"
#include "roofkit/foliation.hpp"
#include "roofkit/spec_io.hpp"
#include "roofkit/verify.hpp"

namespace {

using namespace roofkit;
using io::json;

constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_invariant = 3;

struct common_args {
  std::string channel;
  std::string state;
  std::string ensemble;
  bool bits = false;
};

ChannelSpec load_channel(const std::string& path) {
  ChannelSpec spec = io::channel_from_json(io::read_json_file(path));
  validate(spec);
  return spec;
}

DensityOperator load_state(const std::string& path) {
  const json doc = io::read_json_file(path);
  // Parse problems surface as parse_error, range problems as invalid_state.
  return io::state_from_json(doc);
}

const char* unit_name(bool bits) { return bits ? "bits" : "nats"; }
entropy_unit unit_of(bool bits) { return bits ? entropy_unit::bits : entropy_unit::nats; }

json bloch_json(const BlochVector& b) { return json::array({b.x1, b.x2, b.x3}); }

json state_json(const DensityOperator& rho) {
  json j = io::state_to_json(rho);
  j["bloch"] = bloch_json(rho.bloch());
  return j;
}

void print(const json& doc) { std::cout << doc.dump(2) << '\n'; }

json concurrence_doc(const ChannelSpec& spec, const DensityOperator& rho) {
  const concurrence_report r = concurrence(spec, rho);
  json doc{{"concurrence", r.value}, {"channel_kind", kind_name(spec)}, {"method", method_name(r.method)}};
  if (r.method != concurrence_method::theta) {
    doc["closed_form_value"] = r.value;
    doc["theta_path_value"] = r.theta_value;
    doc["method_agreement"] = std::abs(r.value - r.theta_value);
  }
  return doc;
}

json entanglement_doc(const ChannelSpec& spec, const DensityOperator& rho, bool bits) {
  const concurrence_report r = concurrence(spec, rho);
  return {{"E", to_unit(entanglement_E(spec, rho), unit_of(bits))},
          {"unit", unit_name(bits)},
          {"concurrence", r.value},
          {"channel_kind", kind_name(spec)},
          {"method", method_name(r.method)}};
}

json entropy_doc(const ChannelSpec& spec, const DensityOperator& rho, bool bits) {
  const concurrence_report r = concurrence(spec, rho);
  const double s = von_neumann_entropy(apply_channel(spec, rho));
  const double e = entanglement_E(spec, rho);
  return {{"H", to_unit(s - e, unit_of(bits))},
          {"S_output", to_unit(s, unit_of(bits))},
          {"E", to_unit(e, unit_of(bits))},
          {"unit", unit_name(bits)},
          {"channel_kind", kind_name(spec)},
          {"method", method_name(r.method)}};
}

CapacityResult capacity_of(const ChannelSpec& spec, double tolerance) {
  if (const auto* ad = std::get_if<amplitude_damping>(&spec)) return capacity_amplitude_damping(ad->p, tolerance);
  capacity_options opt;
  opt.tolerance = std::min(1e-6, tolerance);
  return capacity_numeric(spec, opt);
}

json capacity_doc(const ChannelSpec& spec, double tolerance, bool bits) {
  const CapacityResult c = capacity_of(spec, tolerance);
  json doc{{bits ? "capacity_bits" : "capacity_nats", to_unit(c.capacity, unit_of(bits))},
           {"unit", unit_name(bits)},
           {"r0", c.maximizer_r},
           {"maximizer_state", state_json(c.maximizer_state)},
           {"converged", c.converged},
           {"channel_kind", kind_name(spec)},
           {"method", std::holds_alternative<amplitude_damping>(spec) ? "amplitude-damping-1d" : "numeric-search"}};
  return doc;
}

json form_json(const LinearForm& f) { return {{"c0", f.c0}, {"c", json::array({f.c[0], f.c[1], f.c[2]})}}; }

json foliation_doc(const ChannelSpec& spec, const DensityOperator& rho) {
  const FormPair forms = forms_for(spec);
  const Leaf leaf = leaf_through(forms, rho);
  json doc{{"channel_kind", kind_name(spec)},
           {"method", std::holds_alternative<canonical_form>(spec) ? "canonical" : "theta"},
           {"forms", {{"L1", form_json(forms.first)}, {"L2", form_json(forms.second)}}}};
  json leaf_j{{"kind", leaf_kind_name(leaf.kind)},
              {"base_point", bloch_json(leaf.base_point)},
              {"center", bloch_json(leaf.center)},
              {"radius", leaf.radius}};
  json dirs = json::array();
  for (const auto& d : leaf.directions) dirs.push_back(json::array({d[0], d[1], d[2]}));
  leaf_j["directions"] = dirs;
  json ends = json::array();
  for (const auto& e : leaf.endpoints) ends.push_back(state_json(e));
  leaf_j["endpoints"] = ends;
  doc["leaf"] = leaf_j;
  json dec = json::array();
  const PureDecomposition best = optimal_decomposition(leaf);
  for (const auto& m : best.members())
    dec.push_back({{"weight", m.weight}, {"state", state_json(m.state)}});
  doc["decomposition"] = dec;
  doc["concurrence"] = concurrence(spec, rho).value;
  json zeros = json::array();
  for (const auto& z : zero_concurrence_states(kraus_of(spec))) zeros.push_back(state_json(z));
  doc["zero_concurrence_states"] = zeros;
  return doc;
}

// --- sweep -------------------------------------------------------------

struct sweep_args {
  std::string quantity;
  std::string param;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  std::string output;
  int jobs = 1;
  double tolerance = 1e-10;
};

ChannelSpec with_channel_param(ChannelSpec spec, const std::string& name, double v) {
  if (auto* ad = std::get_if<amplitude_damping>(&spec); ad && name == "p") {
    ad->p = v;
  } else if (auto* pd = std::get_if<phase_damping>(&spec); pd && (name == "z" || name == "z_re")) {
    pd->z = {v, pd->z.imag()};
  } else if (pd && name == "z_im") {
    pd->z = {pd->z.real(), v};
  } else {
    throw io::parse_error("parameter '" + name + "' does not belong to channel kind '" + kind_name(spec) + "'");
  }
  validate(spec);
  return spec;
}

bool is_state_param(const std::string& name) { return name == "x1" || name == "x2" || name == "x3"; }

DensityOperator with_state_param(const DensityOperator& rho, const std::string& name, double v) {
  BlochVector b = rho.bloch();
  (name == "x1" ? b.x1 : name == "x2" ? b.x2 : b.x3) = v;
  return density_from_bloch(b);
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_sweep(const common_args& c, const sweep_args& s) {
  if (s.steps < 2) throw io::parse_error("field 'steps': must be >= 2");
  const ChannelSpec base = load_channel(c.channel);
  const bool needs_state = s.quantity != "capacity";
  std::optional<DensityOperator> rho;
  if (needs_state) {
    if (c.state.empty()) throw io::parse_error("field 'state': required for quantity '" + s.quantity + "'");
    rho = load_state(c.state);
  }
  if (s.quantity != "capacity" && s.quantity != "concurrence" && s.quantity != "entanglement" &&
      s.quantity != "entropy")
    throw io::parse_error("field 'quantity': unknown quantity '" + s.quantity + "'");
  if (!needs_state && is_state_param(s.param))
    throw io::parse_error("parameter '" + s.param + "' is a state coordinate but capacity takes no state");
  // Probe the parameter once so a mismatch is reported before any work.
  if (!is_state_param(s.param)) with_channel_param(base, s.param, s.from);

  const std::size_t rows = static_cast<std::size_t>(s.steps);
  std::vector<std::string> lines(rows);
  auto compute_row = [&](std::size_t i) {
    const double v =
        i + 1 == rows ? s.to : s.from + (s.to - s.from) * static_cast<double>(i) / static_cast<double>(rows - 1);
    ChannelSpec spec = base;
    DensityOperator state = rho ? *rho : DensityOperator::maximally_mixed();
    if (is_state_param(s.param)) state = with_state_param(state, s.param, v);
    else spec = with_channel_param(base, s.param, v);
    std::string line = format17(v) + ",";
    if (s.quantity == "capacity") {
      const CapacityResult r = capacity_of(spec, s.tolerance);
      line += format17(to_unit(r.capacity, unit_of(c.bits))) + "," + format17(r.maximizer_r);
    } else if (s.quantity == "concurrence") {
      line += format17(concurrence(spec, state).value);
    } else if (s.quantity == "entanglement") {
      line += format17(to_unit(entanglement_E(spec, state), unit_of(c.bits)));
    } else {
      line += format17(to_unit(entropy_H(spec, state), unit_of(c.bits)));
    }
    lines[i] = line;
  };

  if (s.jobs > 1) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(s.jobs));
    std::vector<std::thread> pool;
    for (int t = 0; t < s.jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = static_cast<std::size_t>(t); i < rows; i += static_cast<std::size_t>(s.jobs))
            compute_row(i);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t i = 0; i < rows; ++i) compute_row(i);
  }

  std::string header = s.param + "," + s.quantity;
  if (s.quantity == "capacity") header += ",r0";
  std::FILE* out = s.output == "-" ? stdout : std::fopen(s.output.c_str(), "wb");
  if (!out) throw std::runtime_error("cannot write '" + s.output + "'");
  std::fputs((header + "\n").c_str(), out);
  for (const auto& l : lines) std::fputs((l + "\n").c_str(), out);
  if (out != stdout) std::fclose(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roofkit: concurrence, entanglement and capacities of length-two qubit channels"};
  app.require_subcommand(1);

  common_args c;
  double tolerance = 1e-10;

  auto add_channel = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--channel", c.channel, "Channel spec file (JSON)");
    if (required) opt->required();
  };
  auto add_state = [&](CLI::App* sub) { sub->add_option("--state", c.state, "State spec file (JSON)")->required(); };
  auto add_bits = [&](CLI::App* sub) { sub->add_flag("--bits", c.bits, "Report entropies in bits instead of nats"); };

  auto* cmd_conc = app.add_subcommand("concurrence", "C(T; rho)");
  add_channel(cmd_conc);
  add_state(cmd_conc);

  auto* cmd_ent = app.add_subcommand("entanglement", "E(T; rho) = h2(C)");
  add_channel(cmd_ent);
  add_state(cmd_ent);
  add_bits(cmd_ent);

  auto* cmd_entropy = app.add_subcommand("entropy", "H(T; rho) = S(T(rho)) - E(T; rho)");
  add_channel(cmd_entropy);
  add_state(cmd_entropy);
  add_bits(cmd_entropy);

  auto* cmd_chi = app.add_subcommand("chi", "Holevo quantity of an ensemble, optionally after a channel");
  add_channel(cmd_chi, false);
  cmd_chi->add_option("--ensemble", c.ensemble, "Ensemble spec file (JSON)")->required();
  add_bits(cmd_chi);

  auto* cmd_cap = app.add_subcommand("capacity", "1-shot (Holevo) capacity");
  add_channel(cmd_cap);
  add_bits(cmd_cap);
  cmd_cap->add_option("--tol", tolerance, "Maximizer tolerance")->check(CLI::PositiveNumber);

  auto* cmd_fol = app.add_subcommand("foliation", "Leaf through rho, its optimal decomposition and the zero line");
  add_channel(cmd_fol);
  add_state(cmd_fol);

  sweep_args sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "Tabulate a quantity over a parameter grid (CSV)");
  cmd_sweep->add_option("--quantity", sw.quantity, "concurrence | entanglement | entropy | capacity")->required();
  add_channel(cmd_sweep);
  cmd_sweep->add_option("--state", c.state, "State spec file (JSON)");
  cmd_sweep->add_option("--param", sw.param, "p | z | z_re | z_im | x1 | x2 | x3")->required();
  cmd_sweep->add_option("--from", sw.from)->required();
  cmd_sweep->add_option("--to", sw.to)->required();
  cmd_sweep->add_option("--steps", sw.steps, "Grid points (>= 2)")->required();
  cmd_sweep->add_option("--output,-o", sw.output, "Output CSV path, '-' for stdout")->required();
  cmd_sweep->add_option("--jobs", sw.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_bits(cmd_sweep);

  verify::suite_config vc;
  long long verify_cases = static_cast<long long>(vc.cases);
  auto* cmd_verify = app.add_subcommand("verify", "Run the seeded property suite");
  cmd_verify->add_option("--seed", vc.seed);
  cmd_verify->add_option("--cases", verify_cases);
  cmd_verify->add_option("--budget", vc.budget, "Roof-oracle evaluations per roof");

  std::string spec_out;
  auto* cmd_spec = app.add_subcommand("spec", "Parse, validate and rewrite a channel spec file");
  add_channel(cmd_spec);
  cmd_spec->add_option("--output,-o", spec_out, "Output path, '-' for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (cmd_conc->parsed()) {
      print(concurrence_doc(load_channel(c.channel), load_state(c.state)));
    } else if (cmd_ent->parsed()) {
      print(entanglement_doc(load_channel(c.channel), load_state(c.state), c.bits));
    } else if (cmd_entropy->parsed()) {
      print(entropy_doc(load_channel(c.channel), load_state(c.state), c.bits));
    } else if (cmd_chi->parsed()) {
      const Ensemble e = io::ensemble_from_json(io::read_json_file(c.ensemble));
      std::optional<KrausPair> ch;
      json doc;
      if (!c.channel.empty()) {
        const ChannelSpec spec = load_channel(c.channel);
        ch = kraus_of(spec);
        doc["channel_kind"] = kind_name(spec);
      } else {
        doc["channel_kind"] = "identity";
      }
      doc["chi"] = holevo_chi(e, ch, unit_of(c.bits));
      doc["unit"] = unit_name(c.bits);
      print(doc);
    } else if (cmd_cap->parsed()) {
      print(capacity_doc(load_channel(c.channel), tolerance, c.bits));
    } else if (cmd_fol->parsed()) {
      print(foliation_doc(load_channel(c.channel), load_state(c.state)));
    } else if (cmd_sweep->parsed()) {
      return run_sweep(c, sw);
    } else if (cmd_verify->parsed()) {
      if (verify_cases < 1) {
        std::cerr << "verify: --cases must be >= 1\n";
        return exit_usage;
      }
      vc.cases = static_cast<std::size_t>(verify_cases);
      const verify::report r = verify::run_suite(vc);
      std::cout << r.to_string();
      return r.all_passed() ? 0 : exit_verify_failed;
    } else if (cmd_spec->parsed()) {
      const json doc = io::channel_to_json(load_channel(c.channel));
      if (spec_out == "-") print(doc);
      else io::write_json_file(spec_out, doc);
    }
  } catch (const io::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_usage;
  } catch (const roofkit::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_invariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return 0;
}
