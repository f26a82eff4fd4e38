#pragma once

// Batch verification: grids of hom dimensions between Rouquier complexes,
// exactness and subquotient checks, a content-addressed on-disk cache, and
// versioned JSON / table reports shared by the command-line tool and the
// acceptance runner.

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soergel/complex.hpp"
#include "soergel/coxeter.hpp"
#include "soergel/rouquier.hpp"
#include "soergel/support.hpp"

namespace soergel {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr const char* kCacheDirEnv = "SOERGEL_CACHE_DIR";

/// Immutable entries stored under <dir>/<kind>/<sha256(key)>.json. A default
/// constructed cache is disabled and never hits.
class DiskCache {
 public:
  DiskCache() = default;
  explicit DiskCache(std::string dir);
  /// The directory named by SOERGEL_CACHE_DIR, else `fallback` (may be empty).
  static DiskCache from_env(const std::string& fallback);

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }
  std::optional<std::string> get(std::string_view kind, std::string_view key) const;
  /// No-op when an entry with this key exists already.
  void put(std::string_view kind, std::string_view key, std::string_view payload) const;

 private:
  std::string path_for(std::string_view kind, std::string_view key) const;
  std::string dir_;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
  /// "a:b" or a single integer.
  static IntRange parse(std::string_view text);
  std::vector<int> values() const;
};

/// "all", or comma-separated element names such as "e,s1,s1s2".
std::vector<Elem> parse_elements(const CoxeterSystem& w, std::string_view text);

struct RunOptions {
  /// Worker threads; values below 1 mean one per hardware thread.
  int jobs = 1;
  /// Seconds per cell; 0 disables the limit.
  double timeout_per_cell = 0;
  const DiskCache* cache = nullptr;
  /// Record wall times (off for byte-identical reruns).
  bool timing = true;
};

/// One entry of the hom-vanishing grid.
struct VerificationCell {
  std::string type;
  std::string x;
  std::string y;
  int i = 0;
  int d = 0;
  std::optional<long long> computed;  // empty when skipped or failed to compute
  long long expected = 0;
  /// Empty when the cell was skipped under the time limit.
  std::optional<bool> pass;
  double wall_time = 0;
};

/// dim R_d if x = y and i = 0, else 0.
long long expected_rouquier_dim(const CoxeterSystem& w, Elem x, Elem y, int i, int d);

/// homK_dim(F_x, E_y, i, d) for every x in xs, y in ys, i, d. Ordered by x, y, i, d.
std::vector<VerificationCell> rouquier_grid(const CoxeterSystem& w, const std::vector<Elem>& xs,
                                            const std::vector<Elem>& ys, IntRange is, IntRange ds,
                                            const RunOptions& opt);

/// The complex of a braid word, from the cache when present.
ComplexPtr cached_braid(const CoxeterSystem& w, const BraidWord& word, const DiskCache* cache);

/// Lone nonzero term of a minimal complex, when it has rank one.
struct LoneSummand {
  int index = 0;
  /// k in R_?(k), i.e. minus the generator degree.
  int shift = 0;
};
std::optional<LoneSummand> lone_summand(const LeftComplex& minimal);

/// Generic report: records are JSON objects carrying a "pass" field that is
/// true, false, or null (skipped).
struct Report {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<nlohmann::ordered_json> records;

  int passed() const;
  int failed() const;
  int skipped() const;
  /// 0 when every record passed, 1 on any failure, 2 when some were skipped.
  int exit_code() const;
  std::string to_json() const;
  /// Aligned columns named by the keys of the records, then a summary line.
  std::string to_table() const;
};

nlohmann::ordered_json cell_record(const VerificationCell& c);

Report rouquier_formula_report(const CoxeterSystem& w, const std::vector<Elem>& xs, const std::vector<Elem>& ys,
                               IntRange is, IntRange ds, const RunOptions& opt);

enum class Augmentation { F, E };
/// Exactness of the augmented complexes; `side` defaults to Delta for F and Nabla for E.
Report delta_exact_report(const CoxeterSystem& w, const std::vector<Elem>& ws, Augmentation which,
                          std::optional<Side> side, const RunOptions& opt);

/// For each x and y: the Nabla subquotient complex of E_x and the Delta
/// subquotient complex of F_x vanish for y != x and are R_x(+-l(x)) in index 0 for y = x.
Report almostsplit_report(const CoxeterSystem& w, const std::vector<Elem>& xs, const RunOptions& opt);

/// H^i of a braid complex against the expected R_w(-epsilon) in index 0.
Report cohomology_report(const CoxeterSystem& w, const BraidWord& word, const RunOptions& opt);

/// Delta and Nabla characters of the Bott-Samelson bimodule of a word in the simple reflections.
Report characters_report(const CoxeterSystem& w, const std::vector<int>& word);

/// Complex named by "F:x", "E:x", "Ftilde:x", "Etilde:x", "braid:<word>", "R:x:k" (R_x(k)).
Complex parse_complex_spec(const CoxeterSystem& w, std::string_view spec, const DiskCache* cache);

/// Hom dimensions in the homotopy category over an (i, d) grid.
Report homdim_report(const CoxeterSystem& w, const std::string& a, const std::string& b, IntRange is, IntRange ds,
                     const RunOptions& opt);

/// homK(F_w, E_v[m])(d) = homK(R_w(-l(w)), E_v[m])(d) = homK(F_w, R_v(l(v))[m])(d).
Report step_equalities_report(const CoxeterSystem& w, const std::vector<Elem>& ws, const std::vector<Elem>& vs,
                              IntRange ms, IntRange ds, const RunOptions& opt);

}  // namespace soergel
