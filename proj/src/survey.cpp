#include "idbench/survey.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <mutex>
#include <random>
#include <set>

#include <json.hpp>

#include "idbench/csv.hpp"
#include "idbench/errors.hpp"

namespace idbench::survey {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("IDBENCH_SURVEY_SEED");
  if (!v || !*v) return std::nullopt;
  std::uint64_t seed = 0;
  const char* end = v + std::char_traits<char>::length(v);
  auto [p, ec] = std::from_chars(v, end, seed);
  if (ec != std::errc() || p != end) throw ConfigError("IDBENCH_SURVEY_SEED must be an unsigned integer");
  return seed;
}

std::vector<IdentifierPair> parse_pairs_csv(std::istream& in) {
  std::vector<IdentifierPair> pairs;
  std::set<std::string> seen;
  std::size_t c1 = 0, c2 = 0;
  csv::for_each_row(
      in,
      [&](const std::vector<std::string>& h) {
        auto a = std::find(h.begin(), h.end(), "id1");
        auto b = std::find(h.begin(), h.end(), "id2");
        if (a == h.end() || b == h.end()) throw ParseError("pairs header needs id1 and id2", 1);
        c1 = static_cast<std::size_t>(a - h.begin());
        c2 = static_cast<std::size_t>(b - h.begin());
      },
      [&](const std::vector<std::string>& f, std::size_t line_no) {
        if (f.size() <= std::max(c1, c2)) throw ParseError("too few fields", line_no);
        try {
          IdentifierPair p(Identifier(f[c1]), Identifier(f[c2]));
          if (seen.insert(p.pair_id).second) pairs.push_back(std::move(p));
        } catch (const ValidationError& e) {
          throw ParseError(e.what(), line_no);
        }
      });
  return pairs;
}

Pool make_pool(std::vector<IdentifierPair> pairs, const std::vector<CodeContext>& contexts) {
  Pool pool;
  pool.pairs = std::move(pairs);
  for (const CodeContext& c : contexts) pool.contexts[c.owner].push_back(c);
  return pool;
}

std::vector<std::size_t> indirect_eligible(const Pool& pool) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pool.pairs.size(); ++i) {
    const auto& p = pool.pairs[i];
    if (pool.contexts.count(p.id1.text()) || pool.contexts.count(p.id2.text())) out.push_back(i);
  }
  return out;
}

bool Session::complete() const noexcept {
  return std::all_of(direct_answers.begin(), direct_answers.end(), [](const auto& a) { return a.has_value(); }) &&
         std::all_of(indirect_answers.begin(), indirect_answers.end(), [](const auto& a) { return a.has_value(); });
}

namespace {

template <class Rng>
std::vector<std::size_t> draw(std::vector<std::size_t> pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

json context_to_json(const CodeContext& c) {
  json blanks = json::array();
  for (const auto& b : c.blanks) blanks.push_back({b.line, b.column, b.length});
  return {{"owner", c.owner}, {"lines", c.lines}, {"blanks", blanks}};
}

CodeContext context_from_json(const json& j) {
  CodeContext c;
  c.owner = j.at("owner").get<std::string>();
  j.at("lines").get_to(c.lines);
  for (const auto& b : j.at("blanks")) c.blanks.push_back({b.at(0).get<std::size_t>(), b.at(1).get<std::size_t>(), b.at(2).get<std::size_t>()});
  return c;
}

json pair_json(const IdentifierPair& p) { return {p.id1.text(), p.id2.text()}; }

IdentifierPair pair_from_json(const json& j) {
  return IdentifierPair(Identifier(j.at(0).get<std::string>()), Identifier(j.at(1).get<std::string>()));
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

}  // namespace

Session compose_session(const Pool& pool, std::string id, std::string participant, std::uint64_t seed) {
  if (pool.pairs.size() < kDirectQuestions)
    throw ConfigError("pool has " + std::to_string(pool.pairs.size()) + " pairs, a session needs " +
                      std::to_string(kDirectQuestions));
  const std::vector<std::size_t> eligible = indirect_eligible(pool);
  if (eligible.size() < kIndirectQuestions)
    throw ConfigError("pool has " + std::to_string(eligible.size()) + " pairs with contexts, a session needs " +
                      std::to_string(kIndirectQuestions));

  std::mt19937_64 rng(seed);
  Session s;
  s.id = std::move(id);
  s.participant = std::move(participant);
  s.seed = seed;
  std::vector<std::size_t> all(pool.pairs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  for (std::size_t i : draw(all, kDirectQuestions, rng)) s.direct.push_back(pool.pairs[i]);
  for (std::size_t i : draw(eligible, kIndirectQuestions, rng)) {
    const IdentifierPair& p = pool.pairs[i];
    std::vector<Side> owners;
    if (pool.contexts.count(p.id1.text())) owners.push_back(Side::first);
    if (pool.contexts.count(p.id2.text())) owners.push_back(Side::second);
    const Side owner = owners[std::uniform_int_distribution<std::size_t>(0, owners.size() - 1)(rng)];
    const auto& ctxs = pool.contexts.at(owner == Side::first ? p.id1.text() : p.id2.text());
    const CodeContext& c = ctxs[std::uniform_int_distribution<std::size_t>(0, ctxs.size() - 1)(rng)];
    s.indirect.push_back({p, owner, c});
  }
  s.direct_answers.resize(s.direct.size());
  s.indirect_answers.resize(s.indirect.size());
  return s;
}

std::string session_json(const Session& s) {
  json direct = json::array(), indirect = json::array();
  for (std::size_t i = 0; i < s.direct.size(); ++i) {
    json q = {{"index", i}, {"id1", s.direct[i].id1.text()}, {"id2", s.direct[i].id2.text()},
              {"answered", s.direct_answers[i].has_value()}};
    direct.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < s.indirect.size(); ++i) {
    const IndirectItem& it = s.indirect[i];
    indirect.push_back({{"index", i},
                        {"id1", it.pair.id1.text()},
                        {"id2", it.pair.id2.text()},
                        {"context", it.context.lines},
                        {"answered", s.indirect_answers[i].has_value()}});
  }
  return dump({{"session_id", s.id},
               {"participant", s.participant},
               {"state", s.complete() ? "complete" : "in_progress"},
               {"direct", direct},
               {"indirect", indirect}});
}

struct SurveyStore::Entry {
  std::mutex mutex;
  Session session;
  std::filesystem::path log;

  void append(const json& event) {
    std::ofstream out(log, std::ios::app | std::ios::binary);
    out << dump(event) << '\n';
    out.flush();
    if (!out) throw Error("cannot write session log " + log.string());
  }
};

SurveyStore::SurveyStore(Pool pool, std::filesystem::path data_dir, std::optional<std::uint64_t> base_seed)
    : pool_(std::move(pool)), dir_(std::move(data_dir)), base_seed_(base_seed) {
  if (pool_.pairs.size() < kDirectQuestions || indirect_eligible(pool_).size() < kIndirectQuestions)
    throw ConfigError("survey pool needs at least " + std::to_string(kDirectQuestions) + " pairs and " +
                      std::to_string(kIndirectQuestions) + " pairs with contexts");
  std::filesystem::create_directories(dir_);
  std::vector<std::filesystem::path> logs;
  for (const auto& e : std::filesystem::directory_iterator(dir_))
    if (e.is_regular_file() && e.path().extension() == ".jsonl") logs.push_back(e.path());
  std::sort(logs.begin(), logs.end());
  for (const auto& p : logs) replay(p);
  created_ = sessions_.size();
}

SurveyStore::~SurveyStore() = default;

void SurveyStore::replay(const std::filesystem::path& log) {
  std::ifstream in(log, std::ios::binary);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(std::move(line));
  auto e = std::make_unique<Entry>();
  e->log = log;
  Session& s = e->session;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    json ev;
    try {
      ev = json::parse(lines[n]);
    } catch (const json::exception&) {
      // A torn final line is what a crash mid-append leaves behind.
      if (n + 1 == lines.size()) break;
      throw ParseError(log.string() + ": malformed event", n + 1);
    }
    try {
      const std::string kind = ev.at("event").get<std::string>();
      if (n == 0) {
        if (kind != "created") throw ParseError(log.string() + ": log must start with a created event", 1);
        const json& js = ev.at("session");
        s.id = js.at("id").get<std::string>();
        s.participant = js.at("participant").get<std::string>();
        s.seed = js.at("seed").get<std::uint64_t>();
        for (const auto& p : js.at("direct")) s.direct.push_back(pair_from_json(p));
        for (const auto& q : js.at("indirect"))
          s.indirect.push_back({pair_from_json(q.at("pair")), parse_side(q.at("owner").get<std::string>()),
                                context_from_json(q.at("context"))});
        s.direct_answers.resize(s.direct.size());
        s.indirect_answers.resize(s.indirect.size());
      } else if (kind == "direct") {
        s.direct_answers.at(ev.at("index").get<std::size_t>()) =
            DirectAnswer{ev.at("relatedness").get<int>(), ev.at("similarity").get<int>()};
      } else if (kind == "indirect") {
        s.indirect_answers.at(ev.at("index").get<std::size_t>()) = parse_side(ev.at("chosen").get<std::string>());
      } else {
        throw ParseError(log.string() + ": unknown event '" + kind + "'", n + 1);
      }
    } catch (const json::exception& ex) {
      throw ParseError(log.string() + ": " + ex.what(), n + 1);
    } catch (const std::out_of_range&) {
      throw ParseError(log.string() + ": question index out of range", n + 1);
    }
  }
  if (lines.empty() || s.id.empty()) return;
  const std::string id = s.id;
  sessions_.emplace(id, std::move(e));
}

Session SurveyStore::create(std::string participant) {
  std::unique_lock lock(mutex_);
  std::uint64_t seed;
  if (base_seed_) {
    seed = splitmix64(*base_seed_ + created_);
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  ++created_;
  std::string id;
  for (std::uint64_t h = seed;;) {
    h = splitmix64(h);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    id = buf;
    if (!sessions_.count(id)) break;
  }
  if (participant.empty()) participant = id;
  Session s = compose_session(pool_, id, std::move(participant), seed);

  auto e = std::make_unique<Entry>();
  e->log = dir_ / (id + ".jsonl");
  json direct = json::array(), indirect = json::array();
  for (const auto& p : s.direct) direct.push_back(pair_json(p));
  for (const auto& q : s.indirect)
    indirect.push_back({{"pair", pair_json(q.pair)}, {"owner", to_string(q.owner)}, {"context", context_to_json(q.context)}});
  e->append({{"event", "created"},
             {"session",
              {{"id", s.id}, {"participant", s.participant}, {"seed", s.seed}, {"direct", direct}, {"indirect", indirect}}}});
  e->session = s;
  sessions_.emplace(id, std::move(e));
  return s;
}

SurveyStore::Entry& SurveyStore::entry(const std::string& id) const {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
  return *it->second;
}

Session SurveyStore::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  Entry& e = entry(id);
  std::lock_guard guard(e.mutex);
  return e.session;
}

bool SurveyStore::submit_direct(const std::string& id, std::size_t index, int relatedness, int similarity) {
  std::shared_lock lock(mutex_);
  Entry& e = entry(id);
  std::lock_guard guard(e.mutex);
  Session& s = e.session;
  if (index >= s.direct.size()) throw NotFoundError("no direct question " + std::to_string(index));
  for (int v : {relatedness, similarity})
    if (v < 1 || v > 5) throw ValidationError("ratings must be between 1 and 5");
  if (s.direct_answers[index]) throw ConflictError("direct question " + std::to_string(index) + " already answered");
  e.append({{"event", "direct"}, {"index", index}, {"relatedness", relatedness}, {"similarity", similarity}});
  s.direct_answers[index] = DirectAnswer{relatedness, similarity};
  return s.complete();
}

bool SurveyStore::submit_indirect(const std::string& id, std::size_t index, std::string_view chosen) {
  std::shared_lock lock(mutex_);
  Entry& e = entry(id);
  std::lock_guard guard(e.mutex);
  Session& s = e.session;
  if (index >= s.indirect.size()) throw NotFoundError("no indirect question " + std::to_string(index));
  const Side side = parse_side(chosen);
  if (s.indirect_answers[index])
    throw ConflictError("indirect question " + std::to_string(index) + " already answered");
  e.append({{"event", "indirect"}, {"index", index}, {"chosen", to_string(side)}});
  s.indirect_answers[index] = side;
  return s.complete();
}

Export SurveyStore::export_ratings(bool include_partial) const {
  // Exclusive: no submission can land halfway through the snapshot.
  std::unique_lock lock(mutex_);
  Export out;
  for (const auto& [id, e] : sessions_) {
    const Session& s = e->session;
    if (!include_partial && !s.complete()) continue;
    for (std::size_t i = 0; i < s.direct.size(); ++i) {
      if (!s.direct_answers[i]) continue;
      const auto& p = s.direct[i];
      out.direct.push_back({s.participant, p.pair_id, p.id1.text(), p.id2.text(), s.direct_answers[i]->relatedness,
                            s.direct_answers[i]->similarity});
    }
    for (std::size_t i = 0; i < s.indirect.size(); ++i) {
      if (!s.indirect_answers[i]) continue;
      const auto& q = s.indirect[i];
      out.indirect.push_back(
          {s.participant, q.pair.pair_id, q.pair.id1.text(), q.pair.id2.text(), q.owner, *s.indirect_answers[i]});
    }
  }
  return out;
}

std::size_t SurveyStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

}  // namespace idbench::survey
