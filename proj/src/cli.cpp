#include "bordcalc/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bordcalc/bogomolov.hpp"
#include "bordcalc/bordism.hpp"
#include "bordcalc/builtins.hpp"
#include "bordcalc/error.hpp"
#include "bordcalc/homology.hpp"
#include "bordcalc/lattice.hpp"
#include "bordcalc/presentation.hpp"

namespace bordcalc::cli {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// group sources

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

FiniteGroup group_from_json(const Json& j, std::size_t max_cosets) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "permutation") {
      auto degree = j.at("degree").get<std::size_t>();
      auto gens = j.at("generators").get<std::vector<std::vector<std::uint32_t>>>();
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return from_permutations(degree, gens, labels);
    }
    if (type == "cayley") return from_cayley(j.at("table").get<std::vector<std::vector<std::uint32_t>>>());
    if (type == "presentation") return group_from_presentation(j.at("text").get<std::string>(), max_cosets);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed group JSON: ") + e.what());
  }
  fail(ErrorKind::Input, "unknown group JSON type");
}

FiniteGroup resolve_group(const std::string& source, std::size_t max_cosets) {
  auto colon = source.find(':');
  if (colon == std::string::npos)
    fail(ErrorKind::Input, "group source must be builtin:NAME, file:PATH or presentation:TEXT|PATH");
  const std::string scheme = source.substr(0, colon), rest = source.substr(colon + 1);
  if (scheme == "builtin") {
    if (rest == "G243") return coset_table_to_group(todd_coxeter(parse_presentation(kG243Presentation), max_cosets));
    return builtin(rest);
  }
  if (scheme == "file") {
    Json j;
    try {
      j = Json::parse(read_file(rest));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON in '") + rest + "'", 1, static_cast<int>(e.byte));
    }
    return group_from_json(j, max_cosets);
  }
  if (scheme == "presentation") {
    auto text = trim(rest);
    if (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') && text.back() == text.front())
      text = trim(text.substr(1, text.size() - 2));
    if (!text.empty() && text.front() == '<') return group_from_presentation(text, max_cosets);
    return group_from_presentation(read_file(text), max_cosets);
  }
  fail(ErrorKind::Input, "unknown group source scheme '" + scheme + "'");
}

Json descriptor_json(const AbelianGroupDescriptor& d) {
  return Json{{"free_rank", d.free_rank()}, {"invariant_factors", d.invariant_factors()}, {"text", d.to_string()}};
}

namespace {

std::uint64_t fnv(const std::string& s, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex128(const std::string& s) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(fnv(s, 14695981039346656037ULL)),
                static_cast<unsigned long long>(fnv(s, 0x9e3779b97f4a7c15ULL)));
  return buf;
}

}  // namespace

std::string table_digest(const FiniteGroup& g) {
  std::string s;
  s.reserve(g.table().size() * 4 + 64);
  for (auto x : g.table()) s.append(reinterpret_cast<const char*>(&x), sizeof x);
  for (auto x : g.generators()) s.append(reinterpret_cast<const char*>(&x), sizeof x);
  for (const auto& l : g.labels()) s += l + '\0';
  return hex128(s);
}

// ---------------------------------------------------------------------------
// cache

namespace {

class FileLock {
 public:
  FileLock(const std::string& path, bool exclusive) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

Cache::Cache(std::string dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

std::string Cache::path_for(const std::string& key) const { return (fs::path(dir_) / (hex128(key) + ".json")).string(); }

std::optional<Json> Cache::get(const std::string& key) {
  if (!enabled_ || !fs::exists(dir_)) return std::nullopt;
  FileLock lock((fs::path(dir_) / ".lock").string(), false);
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  try {
    Json rec = Json::parse(in);
    if (rec.at("format") != kCacheFormat || rec.at("version") != kToolVersion || rec.at("key") != key)
      return std::nullopt;
    ++hits_;
    return rec.at("payload");
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // unreadable record: recompute
  }
}

void Cache::put(const std::string& key, const Json& payload) {
  if (!enabled_) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;
  FileLock lock((fs::path(dir_) / ".lock").string(), true);
  const auto path = path_for(key);
  const auto tmp = path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) return;
    Json rec{{"format", kCacheFormat}, {"version", kToolVersion}, {"key", key}, {"payload", payload}};
    out << rec.dump() << '\n';
  }
  fs::rename(tmp, path, ec);
}

// ---------------------------------------------------------------------------
// commands

namespace {

Json group_json(const FiniteGroup& g, const std::string& source) {
  return Json{{"source", source}, {"fingerprint", fingerprint(g)}, {"order", g.order()}};
}

Json envelope(const std::string& command, Json group, Json params, Json result, Json notes) {
  return Json{{"version", kToolVersion}, {"command", command},  {"group", std::move(group)},
              {"parameters", std::move(params)}, {"result", std::move(result)}, {"notes", std::move(notes)}};
}

std::string cache_key(const std::string& command, const FiniteGroup& g, const Json& params) {
  return command + "|" + fingerprint(g) + "|" + table_digest(g) + "|" + params.dump();
}

/// Runs `compute` unless the cache has the (result, notes) pair.
template <class F>
std::pair<Json, Json> cached(Cache& cache, const std::string& key, F compute) {
  if (auto hit = cache.get(key)) return {hit->at("result"), hit->at("notes")};
  auto [result, notes] = compute();
  cache.put(key, Json{{"result", result}, {"notes", notes}});
  return {result, notes};
}

Flavor parse_flavor(const std::string& f) {
  if (f == "u" || f == "U") return Flavor::U;
  if (f == "so" || f == "SO") return Flavor::SO;
  fail(ErrorKind::Input, "flavor must be u or so");
}

BogomolovMethod parse_method(const std::string& m) {
  if (m == "integral") return BogomolovMethod::Integral;
  if (m == "order-modular") return BogomolovMethod::OrderModular;
  fail(ErrorKind::Input, "method must be integral or order-modular");
}

Json shape_json(const SpecialShape& s) { return s.to_string(); }

std::vector<std::string> names(const FiniteGroup& g, const std::vector<Elem>& xs) {
  std::vector<std::string> out;
  for (auto x : xs) out.push_back(g.name(x));
  return out;
}

SurfaceTuple parse_tuple(const FiniteGroup& g, const std::string& text) {
  SurfaceTuple t;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    if (trim(cur).empty()) fail(ErrorKind::Input, "empty entry in tuple");
    t.entries.push_back(evaluate_word(g, cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  if (t.entries.size() % 2 != 0) fail(ErrorKind::Input, "a surface tuple needs an even number of entries");
  return t;
}

/// H2 modulo torals with a class evaluator, choosing the integral route when permitted.
BogomolovResult evaluator_for(const FiniteGroup& g, const Options& o, Json& notes) {
  auto method = parse_method(o.method);
  if (method == BogomolovMethod::Integral && g.order() > kIntegralOrderCap && !o.allow_large &&
      factorize(g.order()).size() == 1) {
    method = BogomolovMethod::OrderModular;
    notes.push_back("classes evaluated with prime-power coefficients (integral route not enabled)");
  }
  return bogomolov(g, method, {o.allow_large});
}

Json coordinates_json(const ClassCoordinates& c) {
  Json out = Json::array();
  for (const auto& x : c.coordinates) out.push_back(Json{{"prime", x.p}, {"modulus", x.modulus}, {"value", x.value}});
  return out;
}

Json witness_json(const FiniteGroup& g, const WitnessReport& w) {
  Json j{{"tuple", names(g, w.tuple.entries)},
         {"genus", w.tuple.genus()},
         {"relator_ok", w.relator_ok},
         {"generates_group", w.generates_group},
         {"evaluated", w.evaluated},
         {"nontrivial", w.nontrivial},
         {"class_coordinates", coordinates_json(w.class_coordinates)}};
  if (!w.skipped_reason.empty()) j["skipped_reason"] = w.skipped_reason;
  return j;
}

}  // namespace

Json cmd_group(const Options& o) {
  auto g = resolve_group(o.group_source, o.max_cosets);
  Json gens = Json::array();
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    gens.push_back(Json{{"label", g.labels()[i]}, {"element", g.generators()[i]}});
  Json hist = Json::object();
  auto h = order_histogram(g);
  for (std::size_t d = 1; d < h.size(); ++d)
    if (h[d]) hist[std::to_string(d)] = h[d];
  Json result{{"descriptor", descriptor_json(h1(g))},
              {"info",
               {{"order", g.order()},
                {"exponent", g.exponent()},
                {"abelian", g.is_abelian()},
                {"shape", shape_json(classify_special(g))},
                {"generators", gens},
                {"center_order", center(g).size()},
                {"derived_order", commutator_subgroup(g).size()},
                {"element_orders", hist}}},
              {"breakdown", Json::array()}};
  return envelope("group", group_json(g, o.group_source), Json::object(), result,
                  Json::array({"descriptor is the abelianization H1(G)"}));
}

Json cmd_subgroups(const Options& o, Cache& cache) {
  auto g = resolve_group(o.group_source, o.max_cosets);
  Json params = Json::object();
  auto [result, notes] = cached(cache, cache_key("subgroups", g, params), [&] {
    auto l = subgroup_classes(g);
    Json rows = Json::array();
    for (std::size_t i = 0; i < l.classes.size(); ++i) {
      const auto& c = l.classes[i];
      auto [kg, inc] = subgroup_as_group(c.representative);
      rows.push_back(Json{{"class", i},
                          {"order", c.representative.size()},
                          {"class_size", c.class_size},
                          {"normalizer_order", c.normalizer.size()},
                          {"weyl_order", c.weyl.order()},
                          {"shape", shape_json(classify_special(kg))},
                          {"generators", names(g, c.representative.generators())}});
    }
    Json res{{"descriptor", nullptr},
             {"info", {{"classes", l.classes.size()}, {"total_subgroups", l.total_subgroups()}}},
             {"breakdown", rows}};
    return std::make_pair(res, Json::array());
  });
  return envelope("subgroups", group_json(g, o.group_source), params, result, notes);
}

Json cmd_h2(const Options& o, Cache& cache) {
  auto g = resolve_group(o.group_source, o.max_cosets);
  auto method = parse_method(o.method);
  Json params{{"method", o.method}, {"allow_large", o.allow_large}};
  auto [result, notes] = cached(cache, cache_key("h2", g, params), [&] {
    Ring ring = Ring::integers();
    if (method == BogomolovMethod::OrderModular) {
      auto f = factorize(g.order());
      if (f.size() != 1) fail(ErrorKind::Precondition, "the order-modular method needs a p-group");
      auto p = static_cast<std::uint32_t>(f[0].first);
      ring = Ring::mod_prime_power(p, local_precision(p, g.order()));
    }
    H2Options opt;
    opt.allow_large = o.allow_large;
    auto h = h2(g, ring, opt);
    Json rows = Json::array();
    for (const auto& q : h.local_quotients())
      rows.push_back(Json{{"prime", q.p}, {"precision", q.k}, {"torsion_exponents", q.torsion_exponents},
                          {"full_summands", q.full_summands}});
    Json res{{"descriptor", descriptor_json(h.descriptor())}, {"breakdown", rows}};
    Json n = Json::array({"ring " + ring.to_string()});
    return std::make_pair(res, n);
  });
  return envelope("h2", group_json(g, o.group_source), params, result, notes);
}

Json cmd_bogomolov(const Options& o, Cache& cache) {
  auto g = resolve_group(o.group_source, o.max_cosets);
  auto method = parse_method(o.method);
  Json params{{"method", o.method}, {"allow_large", o.allow_large}};
  auto [result, notes] = cached(cache, cache_key("bogomolov", g, params), [&] {
    auto b = bogomolov(g, method, {o.allow_large});
    Json res{{"descriptor", b.structure_known ? descriptor_json(b.descriptor) : Json(nullptr)},
             {"order", b.order},
             {"structure_known", b.structure_known},
             {"exponent_bound", b.exponent_bound},
             {"breakdown",
              Json::array({Json{{"part", "H2"}, {"descriptor", descriptor_json(b.h2)}},
                           Json{{"part", "toral cycles"}, {"count", toral_cycles(g).size()}}})}};
    Json n = Json::array();
    for (const auto& s : b.notes) n.push_back(s);
    return std::make_pair(res, n);
  });
  return envelope("bogomolov", group_json(g, o.group_source), params, result, notes);
}

Json cmd_bordism(const Options& o, Cache& cache) {
  auto g = resolve_group(o.group_source, o.max_cosets);
  auto flavor = parse_flavor(o.flavor);
  Json params{{"flavor", to_string(flavor)}, {"allow_large", o.allow_large}};
  auto [result, notes] = cached(cache, cache_key("bordism", g, params), [&] {
    auto rep = omega2(g, flavor, {o.allow_large});
    Json rows = Json::array();
    for (const auto& c : rep.contributions) {
      Json notes_c = Json::array();
      for (const auto& s : c.notes) notes_c.push_back(s);
      rows.push_back(Json{{"class", c.class_index},
                          {"order", c.order},
                          {"class_size", c.class_size},
                          {"shape", shape_json(c.shape)},
                          {"weyl_order", c.weyl_order},
                          {"free", flavor == Flavor::U ? c.u_free : c.so_free},
                          {"torsion", descriptor_json(c.torsion)},
                          {"method", c.method == BogomolovMethod::Integral ? "integral" : "order-modular"},
                          {"notes", notes_c}});
    }
    Json res{{"descriptor", descriptor_json(rep.total)}, {"breakdown", rows}};
    return std::make_pair(res, Json::array({"flavor " + to_string(flavor)}));
  });
  return envelope("bordism", group_json(g, o.group_source), params, result, notes);
}

Json cmd_sk(const Options& o, Cache& cache) {
  if (o.point) {
    Json params{{"point", *o.point}};
    auto sk = sk_point(*o.point);
    if (!sk) {
      Json res{{"descriptor", nullptr}, {"breakdown", Json::array()}};
      return envelope("sk", nullptr, params, res, Json::array({"degree 0 is not given by the point formulas"}));
    }
    Json res{{"descriptor", descriptor_json(sk->sk)},
             {"breakdown", Json::array({Json{{"group", "SK"}, {"descriptor", descriptor_json(sk->sk)}},
                                        Json{{"group", "SKbar"}, {"descriptor", descriptor_json(sk->skbar)}}})}};
    return envelope("sk", nullptr, params, res, Json::array());
  }
  if (o.group_source.empty()) fail(ErrorKind::Input, "sk needs -g GROUP or --point N");
  auto g = resolve_group(o.group_source, o.max_cosets);
  Json params{{"allow_large", o.allow_large}};
  auto [result, notes] = cached(cache, cache_key("sk", g, params), [&] {
    auto s = sk2(g, {o.allow_large});
    Json res{{"descriptor", descriptor_json(s.sk)},
             {"breakdown", Json::array({Json{{"group", "SK_2"}, {"descriptor", descriptor_json(s.sk)}},
                                        Json{{"group", "SKbar_2"}, {"descriptor", descriptor_json(s.skbar)}}})}};
    return std::make_pair(res, Json::array());
  });
  return envelope("sk", group_json(g, o.group_source), params, result, notes);
}

Json cmd_witness_verify(const Options& o) {
  auto g = resolve_group(o.group_source, o.max_cosets);
  auto t = parse_tuple(g, o.tuple);
  if (o.genus != 0 && o.genus != t.genus())
    fail(ErrorKind::Input, "tuple has genus " + std::to_string(t.genus()) + ", not " + std::to_string(o.genus));
  Json params{{"tuple", o.tuple}, {"genus", t.genus()}, {"method", o.method}, {"allow_large", o.allow_large}};
  Json notes = Json::array();
  auto b = evaluator_for(g, o, notes);
  auto w = witness_verify(g, t, &*b.evaluator);
  Json res{{"descriptor", b.structure_known ? descriptor_json(b.descriptor) : Json(nullptr)},
           {"witness", witness_json(g, w)},
           {"breakdown", Json::array()}};
  return envelope("witness verify", group_json(g, o.group_source), params, res, notes);
}

Json cmd_witness_search(const Options& o) {
  auto g = resolve_group(o.group_source, o.max_cosets);
  const std::size_t genus = o.genus == 0 ? 2 : o.genus;
  Json params{{"genus", genus}, {"budget", o.budget}, {"seed", o.seed}, {"method", o.method},
              {"allow_large", o.allow_large}};
  Json notes = Json::array();
  auto b = evaluator_for(g, o, notes);
  auto found = witness_search(g, genus, o.budget, o.seed, *b.evaluator);
  Json res{{"descriptor", b.structure_known ? descriptor_json(b.descriptor) : Json(nullptr)},
           {"found", found.has_value()},
           {"breakdown", Json::array()}};
  if (found) res["witness"] = witness_json(g, witness_verify(g, *found, &*b.evaluator));
  else if (b.order == 1) notes.push_back("B0 is trivial, so every surface class vanishes");
  return envelope("witness search", group_json(g, o.group_source), params, res, notes);
}

Json cmd_tables(const Options& o, int dimension) {
  auto k = resolve_group(o.group_source, o.max_cosets);
  auto flavor = parse_flavor(o.flavor);
  auto d = dimension == 2 ? adjacent_table_dim2(k, flavor) : adjacent_table_dim3(k, flavor);
  Json params{{"dimension", dimension}, {"flavor", to_string(flavor)}};
  Json res{{"descriptor", descriptor_json(d)},
           {"breakdown", Json::array({Json{{"shape", shape_json(classify_special(k))}}})}};
  return envelope("tables dim" + std::to_string(dimension), group_json(k, o.group_source), params, res,
                  Json::array());
}

// ---------------------------------------------------------------------------
// rendering and errors

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("text")) return v["text"].get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return s + "]";
  }
  if (v.is_object()) {
    std::string s = "{";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      s += (first ? "" : ", ") + it.key() + ": " + scalar_text(it.value());
      first = false;
    }
    return s + "}";
  }
  return v.dump();
}

}  // namespace

std::string render_text(const Json& e) {
  std::ostringstream out;
  out << "command: " << e["command"].get<std::string>() << "\n";
  if (!e["group"].is_null())
    out << "group: " << e["group"]["source"].get<std::string>() << " (order " << e["group"]["order"].dump() << ", "
        << e["group"]["fingerprint"].get<std::string>() << ")\n";
  const auto& r = e["result"];
  if (!r["descriptor"].is_null()) out << "result: " << r["descriptor"]["text"].get<std::string>() << "\n";
  for (auto it = r.begin(); it != r.end(); ++it) {
    if (it.key() == "descriptor" || it.key() == "breakdown") continue;
    out << it.key() << ": " << scalar_text(it.value()) << "\n";
  }
  if (!r["breakdown"].empty()) {
    out << "breakdown:\n";
    for (const auto& row : r["breakdown"]) out << "  - " << scalar_text(row) << "\n";
  }
  for (const auto& n : e["notes"]) out << "note: " << n.get<std::string>() << "\n";
  return out.str();
}

int exit_code_for(const std::exception& e) {
  if (auto err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::Parse:
      case ErrorKind::Input: return 2;
      case ErrorKind::Resource: return 3;
      case ErrorKind::Precondition: return 4;
      default: return 1;
    }
  }
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  return 1;
}

}  // namespace bordcalc::cli
