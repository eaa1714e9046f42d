#include "idbench/miner.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "idbench/errors.hpp"

namespace idbench::miner {

namespace fs = std::filesystem;

std::vector<SourceFile> read_corpus_dir(const fs::path& dir, std::size_t* skipped, std::ostream* warn) {
  if (!fs::is_directory(dir)) throw ConfigError("corpus directory not found: " + dir.string());
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".js" || ext == ".mjs" || ext == ".cjs" || ext == ".jsx") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<SourceFile> files;
  std::size_t bad = 0;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    if (in) ss << in.rdbuf();
    if (!in || in.bad()) {
      ++bad;
      if (warn) *warn << "warning: skipping unreadable file " << p.string() << '\n';
      continue;
    }
    files.push_back({p.string(), ss.str()});
  }
  if (skipped) *skipped = bad;
  return files;
}

std::string_view to_string(PrimaryRole role) noexcept {
  switch (role) {
    case PrimaryRole::function: return "function";
    case PrimaryRole::variable: return "variable";
    case PrimaryRole::property: return "property";
    case PrimaryRole::other: return "other";
    case PrimaryRole::mixed: break;
  }
  return "mixed";
}

PrimaryRole IdentifierStats::primary_role() const noexcept {
  for (std::size_t r = 0; r < role_counts.size(); ++r) {
    if (2 * role_counts[r] > count) return static_cast<PrimaryRole>(r);
  }
  return PrimaryRole::mixed;
}

StatsMap identifier_stats(const SourceFile& file) {
  StatsMap out;
  for (const Occurrence& occ : lex_identifiers(file.text)) {
    IdentifierStats& s = out[occ.name];
    s.identifier = occ.name;
    ++s.count;
    ++s.role_counts[static_cast<std::size_t>(occ.role)];
  }
  return out;
}

void merge_into(StatsMap& into, const StatsMap& from) {
  for (const auto& [name, s] : from) {
    IdentifierStats& t = into[name];
    t.identifier = name;
    t.count += s.count;
    for (std::size_t r = 0; r < t.role_counts.size(); ++r) t.role_counts[r] += s.role_counts[r];
  }
}

StatsMap identifier_stats(const std::vector<SourceFile>& files, std::size_t threads) {
  threads = std::max<std::size_t>(1, std::min(threads, files.size()));
  auto work = [&files](std::size_t first, std::size_t last) {
    StatsMap part;
    for (std::size_t i = first; i < last; ++i) merge_into(part, identifier_stats(files[i]));
    return part;
  };
  if (threads == 1) return work(0, files.size());
  std::vector<std::future<StatsMap>> parts;
  for (std::size_t t = 0; t < threads; ++t) {
    parts.push_back(std::async(std::launch::async, work, files.size() * t / threads,
                               files.size() * (t + 1) / threads));
  }
  StatsMap out;
  for (auto& p : parts) merge_into(out, p.get());
  return out;
}

CorpusStats corpus_stats(const StatsMap& stats, const std::set<std::string>& bench,
                         std::size_t files, std::size_t skipped_files) {
  CorpusStats out;
  out.files = files;
  out.skipped_files = skipped_files;
  for (const auto& [name, s] : stats) out.total_occurrences += s.count;

  std::map<std::string, std::size_t> roles;
  std::size_t present = 0;
  bool first = true;
  for (const std::string& id : bench) {
    auto it = stats.find(id);
    const std::size_t n = it == stats.end() ? 0 : it->second.count;
    out.per_identifier[id] = n;
    out.bench_occurrences += n;
    out.min_occurrences = first ? n : std::min(out.min_occurrences, n);
    out.max_occurrences = std::max(out.max_occurrences, n);
    first = false;
    if (n > 0) {
      ++roles[std::string(to_string(it->second.primary_role()))];
      ++present;
    }
  }
  if (!bench.empty())
    out.mean_occurrences = static_cast<double>(out.bench_occurrences) / static_cast<double>(bench.size());
  if (out.total_occurrences > 0) {
    out.coverage = static_cast<double>(out.bench_occurrences) / static_cast<double>(out.total_occurrences);
    out.coverage_defined = true;
  }
  for (const auto& [role, n] : roles)
    out.role_distribution[role] = static_cast<double>(n) / static_cast<double>(present);
  return out;
}

std::string to_json(const CorpusStats& s) {
  nlohmann::json j = {
      {"files", s.files},
      {"skipped_files", s.skipped_files},
      {"total_occurrences", s.total_occurrences},
      {"bench_occurrences", s.bench_occurrences},
      {"coverage", s.coverage},
      {"coverage_defined", s.coverage_defined},
      {"min_occurrences", s.min_occurrences},
      {"mean_occurrences", s.mean_occurrences},
      {"max_occurrences", s.max_occurrences},
      {"role_distribution", s.role_distribution},
      {"per_identifier", s.per_identifier},
  };
  return j.dump(2);
}

void SamplingConfig::validate() const {
  std::vector<Band> sorted = bands;
  std::sort(sorted.begin(), sorted.end(), [](const Band& a, const Band& b) { return a.low < b.low; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Band& b = sorted[i];
    if (b.low < -1.0 || b.high > 1.0 || !(b.low < b.high))
      throw ConfigError("band must satisfy -1 <= low < high <= 1");
    if (i > 0 && b.low < sorted[i - 1].high) throw ConfigError("bands overlap");
  }
}

namespace {

bool in_band(const Band& b, double c) {
  return c >= b.low && (c < b.high || (b.high >= 1.0 && c <= b.high));
}

IdentifierPair ordered_pair(const std::string& a, const std::string& b) {
  return a < b ? IdentifierPair(Identifier(a), Identifier(b)) : IdentifierPair(Identifier(b), Identifier(a));
}

}  // namespace

std::vector<IdentifierPair> sample_pairs(const StatsMap& stats, const embed::EmbeddingStore& store,
                                         const SamplingConfig& cfg) {
  cfg.validate();
  std::vector<std::string> names;
  std::vector<embed::Vector> vecs;
  for (const auto& [name, s] : stats) {
    if (s.count <= cfg.min_count || !is_identifier(name)) continue;
    auto v = embed::try_vector_for(store, name);
    if (!v) continue;
    names.push_back(name);
    vecs.push_back(std::move(*v));
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<IdentifierPair> out;
  std::set<std::string> seen;
  auto add = [&](IdentifierPair p) {
    if (seen.insert(p.pair_id).second) out.push_back(std::move(p));
  };

  if (!cfg.bands.empty()) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> members(cfg.bands.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        double c;
        try {
          c = embed::cosine(vecs[i], vecs[j]);
        } catch (const UndefinedError&) {
          continue;
        }
        for (std::size_t b = 0; b < cfg.bands.size(); ++b) {
          if (in_band(cfg.bands[b], c)) members[b].emplace_back(i, j);
        }
      }
    }
    for (std::size_t b = 0; b < cfg.bands.size(); ++b) {
      auto& pool = members[b];
      if (pool.size() < cfg.bands[b].quota) {
        std::ostringstream msg;
        msg << "band [" << cfg.bands[b].low << ", " << cfg.bands[b].high << "] holds " << pool.size()
            << " pairs, quota is " << cfg.bands[b].quota;
        throw SamplingError(msg.str());
      }
      // Partial Fisher-Yates draw.
      for (std::size_t k = 0; k < cfg.bands[b].quota; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
        std::swap(pool[k], pool[pick(rng)]);
        add(ordered_pair(names[pool[k].first], names[pool[k].second]));
      }
    }
  }

  for (const IdentifierPair& p : cfg.manual_pairs) add(p);

  if (cfg.random_pairs > 0) {
    std::size_t added = 0;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 100 * cfg.random_pairs + 1000;
    if (names.size() >= 2) {
      std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
      while (added < cfg.random_pairs && attempts++ < max_attempts) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        IdentifierPair p = ordered_pair(names[i], names[j]);
        if (seen.insert(p.pair_id).second) {
          out.push_back(std::move(p));
          ++added;
        }
      }
    }
    if (added < cfg.random_pairs)
      throw SamplingError("could only draw " + std::to_string(added) + " of " +
                          std::to_string(cfg.random_pairs) + " random pairs");
  }
  return out;
}

CodeContext blank_window(const std::string& owner, const std::array<std::string, 5>& lines) {
  CodeContext ctx;
  ctx.owner = owner;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::string& src = lines[l];
    std::string& dst = ctx.lines[l];
    std::size_t i = 0;
    while (i < src.size()) {
      const bool boundary_before = i == 0 || !is_identifier_part(src[i - 1]);
      if (boundary_before && src.compare(i, owner.size(), owner) == 0) {
        const std::size_t end = i + owner.size();
        if (end == src.size() || !is_identifier_part(src[end])) {
          ctx.blanks.push_back({l, dst.size(), owner.size()});
          dst.append(kBlank);
          i = end;
          continue;
        }
      }
      dst.push_back(src[i++]);
    }
  }
  return ctx;
}

ContextSample extract_contexts(const std::vector<SourceFile>& files, const std::string& identifier,
                               std::size_t n_contexts, std::uint64_t seed) {
  struct Window {
    std::size_t file;
    std::size_t start;
  };
  std::vector<Window> windows;
  std::vector<std::vector<std::string>> file_lines(files.size());
  for (std::size_t f = 0; f < files.size(); ++f) {
    std::vector<std::size_t> hits;
    for (const Occurrence& occ : lex_identifiers(files[f].text)) {
      if (occ.name == identifier) hits.push_back(occ.line);
    }
    if (hits.empty()) continue;
    auto& lines = file_lines[f];
    std::istringstream in(files[f].text);
    for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
    std::set<std::size_t> starts;
    for (std::size_t line : hits) {
      std::size_t start = line >= 2 ? line - 2 : 0;
      if (lines.size() >= 5) start = std::min(start, lines.size() - 5);
      else start = 0;
      starts.insert(start);
    }
    for (std::size_t s : starts) windows.push_back({f, s});
  }

  ContextSample out;
  out.available = windows.size();
  std::mt19937_64 rng(seed);
  const std::size_t take = std::min(n_contexts, windows.size());
  out.short_of_request = take < n_contexts;
  for (std::size_t k = 0; k < take; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, windows.size() - 1);
    std::swap(windows[k], windows[pick(rng)]);
    const Window& w = windows[k];
    std::array<std::string, 5> lines;
    const auto& src = file_lines[w.file];
    for (std::size_t i = 0; i < 5; ++i) {
      if (w.start + i < src.size()) lines[i] = src[w.start + i];
    }
    out.contexts.push_back(blank_window(identifier, lines));
  }
  return out;
}

}  // namespace idbench::miner
