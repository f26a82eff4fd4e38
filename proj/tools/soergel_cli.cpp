#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "soergel/verify.hpp"

using namespace soergel;

namespace {

struct Common {
  std::string type = "A2";
  int jobs = 1;
  std::string cache_dir;
  std::string format = "table";
  double timeout = 0;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--type", c.type, "Cartan type: A1, A2, A3, B2, B3, G2, I2:m")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "worker threads (0 = all hardware threads)")->capture_default_str();
  cmd->add_option("--cache-dir", c.cache_dir,
                  std::string("on-disk cache directory (default: $") + kCacheDirEnv + ", else no cache)");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  cmd->add_option("--timeout-per-cell", c.timeout, "seconds per cell, 0 for no limit")->capture_default_str();
  cmd->add_flag("--no-timing", c.no_timing, "write zero wall times so reruns are byte-identical");
}

int emit(const Report& r, const Common& c) {
  std::cout << (c.format == "json" ? r.to_json() : r.to_table());
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of hom vanishing between Rouquier complexes of Soergel bimodules"};
  app.require_subcommand(1);
  Common common;

  std::string xs = "all", ys = "all", ws = "all", vs = "all";
  std::string i_range = "-4:4", d_range = "-2:12", m_range = "-3:3";
  std::string which = "F", side;
  std::string word, spec_a, spec_b;

  auto* rf = app.add_subcommand("rouquier-formula", "dim Hom_K(F_x, E_y[i]) in degree d against the vanishing formula");
  add_common(rf, common);
  rf->add_option("--x", xs, "elements, comma-separated, or 'all'")->capture_default_str();
  rf->add_option("--y", ys, "elements, comma-separated, or 'all'")->capture_default_str();
  rf->add_option("--i-range", i_range, "cohomological shifts lo:hi")->capture_default_str();
  rf->add_option("--d-range", d_range, "internal degrees lo:hi")->capture_default_str();

  auto* de = app.add_subcommand("delta-exact", "Delta/Nabla exactness of the augmented complexes");
  add_common(de, common);
  de->add_option("--w", ws, "elements, comma-separated, or 'all'")->capture_default_str();
  de->add_option("--complex", which, "F (augmented F_w) or E (augmented E_w)")
      ->check(CLI::IsMember({"F", "E"}))
      ->capture_default_str();
  de->add_option("--side", side, "delta or nabla (default: delta for F, nabla for E)")
      ->check(CLI::IsMember({"delta", "nabla"}));

  auto* as = app.add_subcommand("almostsplit", "subquotient complexes of E_x and F_x at every y");
  add_common(as, common);
  as->add_option("--x", xs, "elements, comma-separated, or 'all'")->capture_default_str();

  auto* co = app.add_subcommand("cohomology", "cohomology bimodules of the complex of a braid word");
  add_common(co, common);
  co->add_option("--word", word, "braid word such as 's1 s2^-1' (empty for the unit)")->required();

  auto* ch = app.add_subcommand("characters", "Delta and Nabla characters of a Bott-Samelson bimodule");
  add_common(ch, common);
  ch->add_option("--word", word, "word in the simple reflections such as 's1 s2'")->required();

  auto* hd = app.add_subcommand("homdim", "dim Hom_K(A, B[i]) in degree d for two named complexes");
  add_common(hd, common);
  hd->add_option("--a", spec_a, "F:x, E:x, Ftilde:x, Etilde:x, braid:<word>, R:x:k")->required();
  hd->add_option("--b", spec_b, "same forms as --a")->required();
  hd->add_option("--i-range", i_range, "cohomological shifts lo:hi")->capture_default_str();
  hd->add_option("--d-range", d_range, "internal degrees lo:hi")->capture_default_str();

  auto* se = app.add_subcommand("step-equalities",
                                "Hom_K(F_w, E_v[m]) = Hom_K(R_w(-l(w)), E_v[m]) = Hom_K(F_w, R_v(l(v))[m])");
  add_common(se, common);
  se->add_option("--w", ws, "elements, comma-separated, or 'all'")->capture_default_str();
  se->add_option("--v", vs, "elements, comma-separated, or 'all'")->capture_default_str();
  se->add_option("--m-range", m_range, "cohomological shifts lo:hi")->capture_default_str();
  se->add_option("--d-range", d_range, "internal degrees lo:hi")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    auto w = CoxeterSystem::build(common.type);
    DiskCache cache = common.cache_dir.empty() ? DiskCache::from_env("") : DiskCache(common.cache_dir);
    RunOptions opt;
    opt.jobs = common.jobs;
    opt.timeout_per_cell = common.timeout;
    opt.cache = cache.enabled() ? &cache : nullptr;
    opt.timing = !common.no_timing;

    if (rf->parsed()) {
      return emit(rouquier_formula_report(*w, parse_elements(*w, xs), parse_elements(*w, ys), IntRange::parse(i_range),
                                          IntRange::parse(d_range), opt),
                  common);
    }
    if (de->parsed()) {
      std::optional<Side> sd;
      if (!side.empty()) sd = side == "delta" ? Side::Delta : Side::Nabla;
      return emit(delta_exact_report(*w, parse_elements(*w, ws), which == "F" ? Augmentation::F : Augmentation::E, sd, opt),
                  common);
    }
    if (as->parsed()) return emit(almostsplit_report(*w, parse_elements(*w, xs), opt), common);
    if (co->parsed()) return emit(cohomology_report(*w, BraidWord::parse(word, w->rank()), opt), common);
    if (ch->parsed()) {
      BraidWord b = BraidWord::parse(word, w->rank());
      std::vector<int> letters;
      for (auto [s, e] : b.letters) {
        if (e != 1) throw std::invalid_argument("characters takes a word without inverses");
        letters.push_back(s);
      }
      return emit(characters_report(*w, letters), common);
    }
    if (hd->parsed()) {
      return emit(homdim_report(*w, spec_a, spec_b, IntRange::parse(i_range), IntRange::parse(d_range), opt), common);
    }
    if (se->parsed()) {
      return emit(step_equalities_report(*w, parse_elements(*w, ws), parse_elements(*w, vs), IntRange::parse(m_range),
                                         IntRange::parse(d_range), opt),
                  common);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
