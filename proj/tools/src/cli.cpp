#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "output.hpp"

namespace twisted::cli {

namespace {

using Command = std::function<CommandOutcome(const RunConfig&, std::ostream&)>;

struct Invocation {
  std::optional<std::string> config_path;
  FlagOverrides flags;
};

void add_common_flags(CLI::App* sub, Invocation& inv) {
  sub->add_option("--config", inv.config_path, "JSON run configuration");
  sub->add_option("--out", inv.flags.out, "output directory");
  sub->add_option("--B-tesla", inv.flags.B_tesla, "magnetic field, T (0 = free space)");
  sub->add_option("--kinetic-keV", inv.flags.kinetic_keV, "kinetic energy, keV");
  sub->add_option("--w0-nm", inv.flags.w0_nm, "beam waist, nm");
  sub->add_option("--n", inv.flags.n, "radial index");
  sub->add_option("--ell", inv.flags.ell, "topological charge");
  sub->add_option("--spin", inv.flags.spin, "spin projection")->check(CLI::IsMember({"+", "-"}));
  sub->add_option("--dz-over-zm", inv.flags.dz_over_zm, "propagator step over z_m (z_R if B = 0)");
  sub->add_option("--grid-points", inv.flags.grid_points, "propagator radial cells");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted electron beams in a uniform magnetic field", "twisted"};
  app.require_subcommand(1);

  const std::map<std::string, std::pair<Command, std::string>> commands{
      {"figure1", {cmd_figure1, "beam width w(z) curves"}},
      {"figure2", {cmd_figure2, "transverse probability density profiles"}},
      {"verify", {cmd_verify, "closed form vs numerical validation suite"}},
      {"observables", {cmd_observables, "expectation values and quantization"}},
      {"penetrate", {cmd_penetrate, "free space to field injection for +-l"}},
      {"propagate", {cmd_propagate, "Crank-Nicolson propagation with snapshots"}},
  };
  Invocation inv;
  std::map<CLI::App*, const Command*> dispatch;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.second);
    add_common_flags(sub, inv);
    dispatch[sub] = &entry.first;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::optional<std::filesystem::path> file;
    if (inv.config_path) file = *inv.config_path;
    const auto cfg = load_run_config(file, inv.flags);
    for (const auto& [sub, command] : dispatch) {
      if (!sub->parsed()) continue;
      const auto outcome = (*command)(cfg, out);
      return outcome.passed ? 0 : 3;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const FamilyError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace twisted::cli
