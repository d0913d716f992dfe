#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "bordcalc/abelian.hpp"
#include "bordcalc/group.hpp"

namespace bordcalc::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "bordcalc 1.0.0";
inline constexpr int kCacheFormat = 1;

/// builtin:NAME, file:PATH (group JSON), presentation:PATH or presentation:"<...>".
FiniteGroup resolve_group(const std::string& source, std::size_t max_cosets);
/// Group JSON: {"type":"permutation",...}, {"type":"cayley",...} or {"type":"presentation","text":...}.
FiniteGroup group_from_json(const Json& j, std::size_t max_cosets);

Json descriptor_json(const AbelianGroupDescriptor& d);

/// Digest of the exact table, generators and labels; part of every cache key.
std::string table_digest(const FiniteGroup& g);

/// Directory of versioned JSON records guarded by an advisory lock.
class Cache {
 public:
  Cache(std::string dir, bool enabled);

  std::optional<Json> get(const std::string& key);
  void put(const std::string& key, const Json& payload);
  int hits() const noexcept { return hits_; }
  bool enabled() const noexcept { return enabled_; }

 private:
  std::string path_for(const std::string& key) const;
  std::string dir_;
  bool enabled_;
  int hits_ = 0;
};

struct Options {
  std::string group_source;
  std::string flavor = "u";
  std::string method = "integral";
  std::size_t max_cosets = 100000;
  std::uint64_t budget = 100000;
  std::uint64_t seed = 1;
  std::size_t genus = 0;
  std::string tuple;
  std::optional<long long> point;
  bool allow_large = false;
};

/// Each command returns the full report envelope; `cache` may be disabled.
Json cmd_group(const Options& o);
Json cmd_subgroups(const Options& o, Cache& cache);
Json cmd_h2(const Options& o, Cache& cache);
Json cmd_bogomolov(const Options& o, Cache& cache);
Json cmd_bordism(const Options& o, Cache& cache);
Json cmd_sk(const Options& o, Cache& cache);
Json cmd_witness_verify(const Options& o);
Json cmd_witness_search(const Options& o);
Json cmd_tables(const Options& o, int dimension);

/// Plain-text rendering of an envelope.
std::string render_text(const Json& envelope);

/// Process exit code for an error kind.
int exit_code_for(const std::exception& e);

}  // namespace bordcalc::cli
