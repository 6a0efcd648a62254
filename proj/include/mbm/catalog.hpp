#pragma once

#include "mbm/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mbm {

/// A named deformation type: its lattice plus recorded constants.
struct CatalogEntry {
  std::string name;
  Lattice lattice;
  /// nullopt when recorded as "unknown".
  std::optional<Int> fujiki_constant;
  /// An integer, a rational "p/q", "conjectural:<value>" or "unknown", as recorded.
  std::string mbm_square_bound;
  std::vector<std::string> notes;
};

/// Reads and validates a catalog file. Each entry's recorded signature and
/// discriminant must equal the recomputed values; failures raise CatalogError
/// naming the entry and the invariant.
std::vector<CatalogEntry> load_catalog(const std::string& path);
std::vector<CatalogEntry> parse_catalog(const std::string& text);

/// $MBM_CATALOG_PATH if set, otherwise the catalog shipped with the build.
std::string default_catalog_path();

/// Throws CatalogError when no entry has this name.
const CatalogEntry& find_entry(const std::vector<CatalogEntry>& entries, const std::string& name);

/// Parses mbm_square_bound; nullopt for "unknown". The flag is true for "conjectural:".
std::optional<std::pair<Rat, bool>> parse_square_bound(const std::string& recorded);

}  // namespace mbm
