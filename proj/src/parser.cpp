// Copyright 2026 The vaes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vaes/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "vaes/error.hpp"

namespace vaes {

std::string_view violation_name(ViolationCode code) noexcept {
  switch (code) {
    case ViolationCode::kMissingAnswer: return "MISSING_ANSWER";
    case ViolationCode::kMissingDimension: return "MISSING_DIMENSION";
    case ViolationCode::kAmbiguousDimension: return "AMBIGUOUS_DIMENSION";
    case ViolationCode::kDuplicateDimension: return "DUPLICATE_DIMENSION";
    case ViolationCode::kMissingThink: return "MISSING_THINK";
    case ViolationCode::kThinkAfterAnswer: return "THINK_AFTER_ANSWER";
    case ViolationCode::kMissingCriterion: return "MISSING_CRITERION";
    case ViolationCode::kDuplicateCriterion: return "DUPLICATE_CRITERION";
    case ViolationCode::kCriterionOrder: return "CRITERION_ORDER";
    case ViolationCode::kBadTag: return "BAD_TAG";
    case ViolationCode::kWrongLineCount: return "WRONG_LINE_COUNT";
    case ViolationCode::kBadScoreLine: return "BAD_SCORE_LINE";
    case ViolationCode::kEmptyRationale: return "EMPTY_RATIONALE";
    case ViolationCode::kMissingSummary: return "MISSING_SUMMARY";
    case ViolationCode::kDuplicateSummary: return "DUPLICATE_SUMMARY";
    case ViolationCode::kBadSummary: return "BAD_SUMMARY";
  }
  return "UNKNOWN";
}

bool ParseReport::has(ViolationCode code) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

const CriterionUnit* ParseReport::unit(Criterion c) const noexcept {
  for (const CriterionUnit& u : units) {
    if (u.criterion == c) return &u;
  }
  return nullptr;
}

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";
constexpr std::string_view kScoreAnchor = "Score (A v.s. B)";
constexpr std::string_view kSummaryAnchor = "Summary of";

bool is_space(char c) noexcept {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Whole-word occurrence check for `word` at `pos` in `text`.
bool word_at(std::string_view text, std::size_t pos, std::size_t len) noexcept {
  const bool left = pos == 0 || !is_word_char(text[pos - 1]);
  const bool right = pos + len >= text.size() || !is_word_char(text[pos + len]);
  return left && right;
}

std::vector<std::size_t> find_words(std::string_view text, std::string_view word) {
  std::vector<std::size_t> hits;
  for (std::size_t pos = text.find(word); pos != std::string_view::npos;
       pos = text.find(word, pos + 1)) {
    if (word_at(text, pos, word.size())) hits.push_back(pos);
  }
  return hits;
}

std::string line_location(std::size_t line) {
  return "line " + std::to_string(line);
}

std::string criterion_location(int id) { return "C" + std::to_string(id); }

// --------------------------------------------------------------------------
// Answer sentence

enum class EventKind { kDelimiter, kPolarity, kDimension };

struct Event {
  std::size_t pos;
  EventKind kind;
  int polarity = 0;  // raw verb polarity before subject handling
  Dimension dim = Dimension::kVA;
};

std::vector<Event> scan_answer(std::string_view original, std::string_view lower) {
  std::vector<Event> events;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] == ',' || lower[i] == ';' || lower[i] == '.' || lower[i] == ':') {
      events.push_back({i, EventKind::kDelimiter});
    }
  }
  for (std::string_view w : {"while", "whereas", "but"}) {
    for (std::size_t p : find_words(lower, w)) events.push_back({p, EventKind::kDelimiter});
  }
  for (std::string_view w : {"outperforms", "outperform"}) {
    for (std::size_t p : find_words(lower, w)) events.push_back({p, EventKind::kPolarity, 1});
  }
  for (std::string_view w : {"underperforms", "underperform"}) {
    for (std::size_t p : find_words(lower, w)) events.push_back({p, EventKind::kPolarity, -1});
  }
  for (std::size_t p : find_words(lower, "comparable")) {
    events.push_back({p, EventKind::kPolarity, 0});
  }
  for (Dimension d : kDimensions) {
    const std::string title = lower_ascii(dimension_title(d));
    for (std::size_t p : find_words(lower, title)) {
      Event e{p, EventKind::kDimension};
      e.dim = d;
      events.push_back(e);
    }
    for (std::size_t p : find_words(original, dimension_code(d))) {
      Event e{p, EventKind::kDimension};
      e.dim = d;
      events.push_back(e);
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.pos < b.pos; });
  return events;
}

// Polarity of an outperform/underperform verb once its grammatical subject is
// taken into account: "Video B outperforms Video A" is a B-better statement.
int subject_adjusted(std::string_view lower, std::size_t clause_start,
                     const Event& verb) {
  if (verb.polarity == 0) return 0;
  std::string_view before = lower.substr(clause_start, verb.pos - clause_start);
  const std::size_t a = before.rfind("video a");
  const std::size_t b = before.rfind("video b");
  const bool subject_b =
      b != std::string_view::npos && (a == std::string_view::npos || b > a);
  return subject_b ? -verb.polarity : verb.polarity;
}

}  // namespace

std::optional<Verdict> parse_answer_sentence(std::string_view sentence,
                                             std::vector<Violation>& out) {
  const std::string lower = lower_ascii(sentence);
  const std::vector<Event> events = scan_answer(sentence, lower);

  std::array<std::vector<int>, kNumDimensions> assigned;
  std::optional<int> current;            // polarity carried across clauses
  std::vector<Dimension> global_pending;  // dims seen before any polarity

  std::size_t i = 0;
  std::size_t clause_start = 0;
  while (i <= events.size()) {
    // Collect one clause: events up to the next delimiter.
    std::size_t j = i;
    while (j < events.size() && events[j].kind != EventKind::kDelimiter) ++j;
    const bool clause_has_polarity =
        std::any_of(events.begin() + static_cast<std::ptrdiff_t>(i),
                    events.begin() + static_cast<std::ptrdiff_t>(j),
                    [](const Event& e) { return e.kind == EventKind::kPolarity; });
    if (!clause_has_polarity) {
      for (std::size_t k = i; k < j; ++k) {
        if (current) {
          assigned[index_of(events[k].dim)].push_back(*current);
        } else {
          global_pending.push_back(events[k].dim);
        }
      }
    } else {
      std::vector<Dimension> pending = std::move(global_pending);
      global_pending.clear();
      std::optional<int> local;
      for (std::size_t k = i; k < j; ++k) {
        const Event& e = events[k];
        if (e.kind == EventKind::kPolarity) {
          local = subject_adjusted(lower, clause_start, e);
          for (Dimension d : pending) assigned[index_of(d)].push_back(*local);
          pending.clear();
        } else if (local) {
          assigned[index_of(e.dim)].push_back(*local);
        } else {
          pending.push_back(e.dim);
        }
      }
      current = local;
    }
    if (j >= events.size()) break;
    clause_start = events[j].pos;
    i = j + 1;
  }

  bool complete = true;
  Verdict verdict;
  for (Dimension d : kDimensions) {
    const std::vector<int>& hits = assigned[index_of(d)];
    const std::string where(dimension_code(d));
    if (hits.empty()) {
      out.push_back({ViolationCode::kMissingDimension, where,
                     "no comparison stated for " + std::string(dimension_title(d))});
      complete = false;
      continue;
    }
    const bool conflicting = std::any_of(hits.begin(), hits.end(),
                                         [&](int p) { return p != hits.front(); });
    if (conflicting) {
      out.push_back({ViolationCode::kAmbiguousDimension, where,
                     std::string(dimension_title(d)) + " stated with conflicting polarity"});
      complete = false;
    } else if (hits.size() > 1) {
      out.push_back({ViolationCode::kDuplicateDimension, where,
                     std::string(dimension_title(d)) + " stated more than once"});
      complete = false;
    } else {
      verdict.at(d) = static_cast<PrefScore>(hits.front());
    }
  }
  if (!complete) return std::nullopt;
  return verdict;
}

std::string answer_sentence(const Verdict& v) {
  // Group dimensions by polarity, in order of first appearance.
  std::vector<std::pair<PrefScore, std::vector<Dimension>>> groups;
  for (Dimension d : kDimensions) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == v.at(d); });
    if (it == groups.end()) {
      groups.push_back({v.at(d), {d}});
    } else {
      it->second.push_back(d);
    }
  }
  auto dim_list = [](const std::vector<Dimension>& dims) {
    auto name = [](Dimension d) { return lower_ascii(dimension_title(d)); };
    if (dims.size() == 1) return name(dims[0]);
    if (dims.size() == 2) return name(dims[0]) + " and " + name(dims[1]);
    return name(dims[0]) + ", " + name(dims[1]) + ", and " + name(dims[2]);
  };
  std::string out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const bool first = g == 0;
    std::string clause;
    switch (groups[g].first) {
      case PrefScore::kABetter: clause = "Video A outperforms Video B in "; break;
      case PrefScore::kBBetter: clause = "Video A underperforms Video B in "; break;
      case PrefScore::kTie:
        clause = first ? "The two are comparable in " : "the two are comparable in ";
        break;
    }
    clause += dim_list(groups[g].second);
    if (first) {
      out = clause;
    } else if (g == 1) {
      out += ", while " + clause;
    } else {
      out += ", and " + clause;
    }
  }
  return out + ".";
}

namespace {

struct Blocks {
  std::size_t think_open = std::string_view::npos;
  std::size_t think_close = std::string_view::npos;
  std::size_t answer_open = std::string_view::npos;
  std::size_t answer_close = std::string_view::npos;

  bool think() const noexcept { return think_close != std::string_view::npos; }
  bool answer() const noexcept { return answer_close != std::string_view::npos; }
};

Blocks locate_blocks(std::string_view raw) {
  Blocks b;
  b.think_open = raw.find(kThinkOpen);
  if (b.think_open != std::string_view::npos) {
    b.think_close = raw.find(kThinkClose, b.think_open + kThinkOpen.size());
  }
  b.answer_open = raw.find(kAnswerOpen);
  if (b.answer_open != std::string_view::npos) {
    b.answer_close = raw.find(kAnswerClose, b.answer_open + kAnswerOpen.size());
  }
  return b;
}

void parse_answer_block(std::string_view raw, const Blocks& blocks,
                        ParseReport& report) {
  if (!blocks.answer()) {
    report.violations.push_back({ViolationCode::kMissingAnswer, "answer",
                                 "no closed <answer>...</answer> block"});
    return;
  }
  report.answer_closed = true;
  const std::size_t begin = blocks.answer_open + kAnswerOpen.size();
  report.verdict = parse_answer_sentence(
      raw.substr(begin, blocks.answer_close - begin), report.violations);
}

// --------------------------------------------------------------------------
// Think body

struct TagMatch {
  int id = 0;
  std::string error;  // nonempty when the line is tag-shaped but invalid
};

// Tag-shaped lines look like "[<Dimension>-C<k>.<Name>]".
std::optional<TagMatch> match_tag(std::string_view line) {
  if (line.size() < 2 || line.front() != '[' || line.back() != ']') return std::nullopt;
  std::string_view inner = line.substr(1, line.size() - 2);
  const std::size_t dash = inner.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  std::string_view title = trim(inner.substr(0, dash));
  std::string_view rest = trim(inner.substr(dash + 1));
  if (rest.empty() || rest.front() != 'C') return std::nullopt;
  rest.remove_prefix(1);
  int id = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), id);
  if (ec != std::errc() || ptr == rest.data()) return std::nullopt;
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  rest = trim(rest);
  TagMatch m;
  if (rest.empty() || rest.front() != '.') {
    m.error = "tag is missing '.' before the criterion name";
    return m;
  }
  std::string_view name = trim(rest.substr(1));
  if (id < 1 || id > kNumCriteria) {
    m.error = "criterion number C" + std::to_string(id) + " is out of range";
    return m;
  }
  const CriterionInfo& info = criterion_table()[static_cast<std::size_t>(id - 1)];
  auto dim = dimension_from_title(title);
  if (!dim) {
    m.error = "unknown dimension name '" + std::string(title) + "'";
  } else if (*dim != info.dimension) {
    m.error = "C" + std::to_string(id) + " does not belong to " + std::string(title);
  } else if (name != info.name && (info.alias.empty() || name != info.alias)) {
    m.error = "C" + std::to_string(id) + " name must be '" + std::string(info.name) +
              "', got '" + std::string(name) + "'";
  } else {
    m.id = id;
  }
  return m;
}

struct ScoreMatch {
  PrefScore score;
  std::string note;
};

std::optional<ScoreMatch> match_score_line(std::string_view s) {
  if (s.substr(0, kScoreAnchor.size()) != kScoreAnchor) return std::nullopt;
  s.remove_prefix(kScoreAnchor.size());
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  if (s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  PrefScore score;
  if (s.substr(0, 2) == "-1") {
    score = PrefScore::kBBetter;
    s.remove_prefix(2);
  } else if (!s.empty() && (s.front() == '0' || s.front() == '1')) {
    score = s.front() == '1' ? PrefScore::kABetter : PrefScore::kTie;
    s.remove_prefix(1);
  } else {
    return std::nullopt;
  }
  if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '.')) {
    return std::nullopt;
  }
  return ScoreMatch{score, std::string(trim(s))};
}

struct SummaryMatch {
  Dimension dim;
  std::optional<DimensionSummary> summary;
  std::string error;
};

std::optional<PrefScore> summary_conclusion(std::string_view body, std::string& error) {
  const std::string lower = lower_ascii(body);
  std::vector<PrefScore> seen;
  auto scan = [&](std::string_view phrase, PrefScore p) {
    if (lower.find(phrase) != std::string::npos) seen.push_back(p);
  };
  scan("video a is better than video b", PrefScore::kABetter);
  scan("video b is worse than video a", PrefScore::kABetter);
  scan("video b is better than video a", PrefScore::kBBetter);
  scan("video a is worse than video b", PrefScore::kBBetter);
  if (!find_words(lower, "comparable").empty()) seen.push_back(PrefScore::kTie);
  if (seen.empty()) {
    scan("score is positive", PrefScore::kABetter);
    scan("score is negative", PrefScore::kBBetter);
    scan("score is zero", PrefScore::kTie);
  }
  if (seen.empty()) {
    error = "summary states no conclusion";
    return std::nullopt;
  }
  if (std::any_of(seen.begin(), seen.end(), [&](PrefScore p) { return p != seen.front(); })) {
    error = "summary states conflicting conclusions";
    return std::nullopt;
  }
  return seen.front();
}

std::optional<SummaryMatch> match_summary(std::string_view line) {
  if (line.empty() || line.front() != '[') return std::nullopt;
  std::string_view inner = trim(line.substr(1));
  if (inner.substr(0, kSummaryAnchor.size()) != kSummaryAnchor) return std::nullopt;
  inner.remove_prefix(kSummaryAnchor.size());
  if (!inner.empty() && inner.back() == ']') inner.remove_suffix(1);
  const std::size_t colon = inner.find(':');
  std::string_view title = trim(inner.substr(0, colon));
  auto dim = dimension_from_title(title);
  if (!dim) return std::nullopt;
  SummaryMatch m{*dim, std::nullopt, {}};
  if (colon == std::string_view::npos) {
    m.error = "summary has no body";
    return m;
  }
  std::string_view body = inner.substr(colon + 1);

  // Stated sum: the integer after the first '='.
  std::optional<int> stated;
  for (std::size_t eq = body.find('='); eq != std::string_view::npos;
       eq = body.find('=', eq + 1)) {
    std::string_view rest = trim(body.substr(eq + 1));
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec == std::errc() && ptr != rest.data()) {
      stated = value;
      break;
    }
  }
  if (!stated) {
    m.error = "summary does not state '=<sum>'";
    return m;
  }
  auto conclusion = summary_conclusion(body, m.error);
  if (!conclusion) return m;
  m.summary = DimensionSummary{*stated, *conclusion};
  return m;
}

struct PendingUnit {
  int id;
  std::size_t tag_line;
  std::vector<std::pair<std::string, std::size_t>> logical;  // text, line
};

void finish_unit(PendingUnit& pending, ParseReport& report) {
  const std::string where = criterion_location(pending.id);
  if (pending.logical.size() != 4) {
    report.violations.push_back(
        {ViolationCode::kWrongLineCount, where,
         "expected 4 lines, found " + std::to_string(pending.logical.size())});
    return;
  }
  auto score = match_score_line(pending.logical[3].first);
  if (!score) {
    report.violations.push_back(
        {ViolationCode::kBadScoreLine, line_location(pending.logical[3].second),
         where + ": fourth line must read 'Score (A v.s. B): <-1|0|1>'"});
    return;
  }
  CriterionUnit unit;
  unit.criterion = Criterion(pending.id);
  for (std::size_t k = 0; k < 3; ++k) unit.lines[k] = pending.logical[k].first;
  unit.score = score->score;
  unit.note = std::move(score->note);
  try {
    validate(unit);
  } catch (const Error& e) {
    report.violations.push_back({ViolationCode::kEmptyRationale, where, e.what()});
    return;
  }
  report.units.push_back(std::move(unit));
}

// Returns which dimensions had a summary line, valid or not.
std::array<bool, kNumDimensions> parse_think_body(std::string_view body,
                                                  std::size_t first_line,
                                                  ParseReport& report) {
  std::array<bool, kNumDimensions> summarized{};
  std::optional<PendingUnit> pending;
  int last_id = 0;
  std::size_t line_no = first_line;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t end = body.find('\n', pos);
    if (end == std::string_view::npos) end = body.size();
    const std::string_view line = trim(body.substr(pos, end - pos));
    const std::size_t this_line = line_no;
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == body.size()) break;
      continue;
    }

    if (auto summary = match_summary(line)) {
      if (pending) finish_unit(*pending, report);
      pending.reset();
      summarized[index_of(summary->dim)] = true;
      const std::string where(dimension_code(summary->dim));
      auto& slot = report.summaries[index_of(summary->dim)];
      if (!summary->summary) {
        report.violations.push_back({ViolationCode::kBadSummary, line_location(this_line),
                                     where + ": " + summary->error});
      } else if (slot) {
        report.violations.push_back({ViolationCode::kDuplicateSummary, line_location(this_line),
                                     where + " summarized more than once"});
      } else {
        slot = summary->summary;
      }
    } else if (auto tag = match_tag(line)) {
      if (pending) finish_unit(*pending, report);
      pending.reset();
      if (!tag->error.empty()) {
        report.violations.push_back({ViolationCode::kBadTag, line_location(this_line), tag->error});
      } else if (report.criteria_found.test(static_cast<std::size_t>(tag->id - 1))) {
        report.violations.push_back({ViolationCode::kDuplicateCriterion, line_location(this_line),
                                     criterion_location(tag->id) + " appears more than once"});
      } else {
        report.criteria_found.set(static_cast<std::size_t>(tag->id - 1));
        if (tag->id < last_id) {
          report.violations.push_back({ViolationCode::kCriterionOrder, line_location(this_line),
                                       criterion_location(tag->id) + " appears after " +
                                           criterion_location(last_id)});
        }
        last_id = std::max(last_id, tag->id);
        pending = PendingUnit{tag->id, this_line, {}};
      }
    } else if (pending) {
      // A leading hyphen starts a new logical line; anything else continues
      // the previous one (soft-wrapped text).
      if (line.front() == '-') {
        pending->logical.push_back({std::string(trim(line.substr(1))), this_line});
      } else if (pending->logical.empty()) {
        pending->logical.push_back({std::string(line), this_line});
      } else {
        pending->logical.back().first += ' ';
        pending->logical.back().first += line;
      }
    }
    if (end == body.size()) break;
  }
  if (pending) finish_unit(*pending, report);
  return summarized;
}

std::size_t line_of(std::string_view raw, std::size_t offset) {
  return 1 + static_cast<std::size_t>(
                 std::count(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(
                                                           std::min(offset, raw.size())),
                            '\n'));
}

}  // namespace

ParseReport parse_base(std::string_view raw) {
  ParseReport report;
  parse_answer_block(raw, locate_blocks(raw), report);
  return report;
}

ParseReport parse_cot(std::string_view raw) {
  ParseReport report;
  const Blocks blocks = locate_blocks(raw);

  if (!blocks.think()) {
    report.violations.push_back({ViolationCode::kMissingThink, "structure",
                                 "no closed <think>...</think> block"});
  }
  parse_answer_block(raw, blocks, report);
  if (blocks.think() && blocks.answer()) {
    report.think_before_answer = blocks.think_close <= blocks.answer_open;
    if (!report.think_before_answer) {
      report.violations.push_back({ViolationCode::kThinkAfterAnswer, "structure",
                                   "<answer> must follow the closed <think> block"});
    }
  }

  // Criteria are searched inside <think> when it exists, otherwise in the
  // whole text outside the answer block.
  std::array<bool, kNumDimensions> summarized{};
  if (blocks.think()) {
    const std::size_t begin = blocks.think_open + kThinkOpen.size();
    summarized = parse_think_body(raw.substr(begin, blocks.think_close - begin), line_of(raw, begin),
                     report);
  } else {
    std::string outside(raw);
    if (blocks.answer()) {
      const std::size_t stop = blocks.answer_close + kAnswerClose.size();
      for (std::size_t k = blocks.answer_open; k < stop; ++k) {
        if (outside[k] != '\n') outside[k] = ' ';
      }
    }
    summarized = parse_think_body(outside, 1, report);
  }

  for (int id = 1; id <= kNumCriteria; ++id) {
    if (!report.criteria_found.test(static_cast<std::size_t>(id - 1))) {
      report.violations.push_back({ViolationCode::kMissingCriterion, criterion_location(id),
                                   "no tag line for " + criterion_location(id) + "." +
                                       std::string(Criterion(id).name())});
    }
  }
  for (Dimension d : kDimensions) {
    if (!summarized[index_of(d)]) {
      report.violations.push_back({ViolationCode::kMissingSummary,
                                   std::string(dimension_code(d)),
                                   "no summary line for " + std::string(dimension_title(d))});
    }
  }

  std::sort(report.units.begin(), report.units.end(),
            [](const CriterionUnit& a, const CriterionUnit& b) { return a.criterion < b.criterion; });

  if (report.violations.empty() && report.verdict && report.think_before_answer &&
      report.units.size() == static_cast<std::size_t>(kNumCriteria)) {
    CoTTrace trace;
    trace.units = report.units;
    for (Dimension d : kDimensions) trace.summaries[index_of(d)] = *report.summaries[index_of(d)];
    trace.answer = *report.verdict;
    trace.raw_text = std::string(raw);
    report.trace = std::move(trace);
  }
  return report;
}

// --------------------------------------------------------------------------
// Serialization

namespace {

std::string score_text(PrefScore s) { return std::to_string(to_int(s)); }

std::string summary_line(const CoTTrace& trace, Dimension d) {
  const CriterionRange range = criteria_of(d);
  const std::string title(dimension_title(d));
  std::string expr;
  for (int id = range.first; id <= range.last; ++id) {
    const int s = to_int(trace.units[static_cast<std::size_t>(id - 1)].score);
    if (id != range.first && s >= 0) expr += '+';
    expr += std::to_string(s);
  }
  const DimensionSummary& summary = trace.summary(d);
  std::string out = "[Summary of " + title + ": In " + title + ", the sum over " +
                    std::to_string(range.size()) + " criteria is " + expr + "=" +
                    std::to_string(summary.stated_sum);
  if (summary.stated_sum > 0) {
    out += ">0. Therefore, the " + title + " score is positive";
  } else if (summary.stated_sum < 0) {
    out += "<0. Therefore, the " + title + " score is negative";
  } else {
    out += ". Therefore, the " + title + " score is zero";
  }
  switch (summary.stated_conclusion) {
    case PrefScore::kABetter: out += ", and Video A is better than Video B in "; break;
    case PrefScore::kBBetter: out += ", and Video B is better than Video A in "; break;
    case PrefScore::kTie: out += ", and Video A and Video B are comparable in "; break;
  }
  return out + title + ".]";
}

}  // namespace

std::string serialize_trace(const CoTTrace& trace) {
  validate(trace);
  std::string out = "<think>\n";
  for (Dimension d : kDimensions) {
    const CriterionRange range = criteria_of(d);
    for (int id = range.first; id <= range.last; ++id) {
      const CriterionUnit& unit = trace.units[static_cast<std::size_t>(id - 1)];
      out += "[" + std::string(dimension_title(d)) + "-C" + std::to_string(id) + "." +
             std::string(unit.criterion.name()) + "]\n";
      for (const std::string& line : unit.lines) {
        out += line.empty() ? "-\n" : "- " + line + "\n";
      }
      out += "- " + std::string(kScoreAnchor) + ": " + score_text(unit.score);
      if (!unit.note.empty()) out += " " + unit.note;
      out += "\n\n";
    }
    out += summary_line(trace, d) + "\n\n";
  }
  out += "</think>\n<answer>" + answer_sentence(trace.answer) + "</answer>\n";
  return out;
}

}  // namespace vaes
