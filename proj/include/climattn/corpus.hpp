#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "error.hpp"
#include "period.hpp"

namespace climattn {

struct Document {
    std::string id;
    Date date;
    std::string outlet;
    std::string group;
    std::string text;
};

enum class MatchMode { contains_document, count_occurrences };

inline std::string_view to_string(MatchMode m) {
    return m == MatchMode::contains_document ? "contains_document" : "count_occurrences";
}

inline MatchMode parse_match_mode(std::string_view s) {
    if (s == "contains_document") return MatchMode::contains_document;
    if (s == "count_occurrences") return MatchMode::count_occurrences;
    throw ParseError("unknown match_mode '" + std::string(s) + "'");
}

struct PhraseSet {
    std::string name;
    std::vector<std::string> phrases;
    MatchMode match_mode = MatchMode::contains_document;
};

// ---------------------------------------------------------------------------
// Unicode text preparation
// ---------------------------------------------------------------------------

/// Text in NFC with simple case folding applied, one element per code point.
class FoldedText {
public:
    FoldedText() = default;

    static FoldedText from_utf8(std::string_view utf8) {
        FoldedText out;
        if (utf8.empty()) return out;
        UErrorCode status = U_ZERO_ERROR;
        const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
        icu::UnicodeString raw = icu::UnicodeString::fromUTF8(
            icu::StringPiece(utf8.data(), static_cast<std::int32_t>(utf8.size())));
        icu::UnicodeString text = U_SUCCESS(status) ? nfc->normalize(raw, status) : raw;
        if (U_FAILURE(status)) text = raw;
        out.cps_.reserve(static_cast<std::size_t>(text.length()));
        for (std::int32_t i = 0; i < text.length(); i = text.moveIndex32(i, 1))
            out.cps_.push_back(static_cast<char32_t>(u_foldCase(text.char32At(i), U_FOLD_CASE_DEFAULT)));
        return out;
    }

    const std::u32string& code_points() const noexcept { return cps_; }
    std::size_t size() const noexcept { return cps_.size(); }

private:
    std::u32string cps_;
};

namespace detail {

inline bool is_word_char(char32_t c) {
    const auto cp = static_cast<UChar32>(c);
    return u_isalnum(cp) || (U_GET_GC_MASK(cp) & U_GC_M_MASK) != 0;
}

inline bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

}  // namespace detail

/// A phrase split into folded words; matching treats the gaps between
/// words as "one or more whitespace characters".
class CompiledPhrase {
public:
    explicit CompiledPhrase(std::string_view phrase) {
        const auto folded = FoldedText::from_utf8(phrase).code_points();
        std::u32string word;
        for (char32_t c : folded) {
            if (detail::is_space(c)) {
                if (!word.empty()) words_.push_back(std::move(word));
                word.clear();
            } else {
                word.push_back(c);
            }
        }
        if (!word.empty()) words_.push_back(std::move(word));
        if (!words_.empty()) {
            bounded_front_ = detail::is_word_char(words_.front().front());
            bounded_back_ = detail::is_word_char(words_.back().back());
        }
    }

    bool empty() const noexcept { return words_.empty(); }

    /// Non-overlapping, leftmost occurrences in `text`.
    std::size_t count_in(const FoldedText& folded) const {
        if (words_.empty()) return 0;
        const auto& text = folded.code_points();
        std::size_t count = 0;
        std::size_t i = 0;
        while (i < text.size()) {
            if (auto end = match_at(text, i)) {
                ++count;
                i = *end;
            } else {
                ++i;
            }
        }
        return count;
    }

private:
    std::optional<std::size_t> match_at(const std::u32string& text, std::size_t i) const {
        if (bounded_front_ && i > 0 && detail::is_word_char(text[i - 1])) return std::nullopt;
        std::size_t pos = i;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (w > 0) {
                if (pos >= text.size() || !detail::is_space(text[pos])) return std::nullopt;
                while (pos < text.size() && detail::is_space(text[pos])) ++pos;
            }
            const auto& word = words_[w];
            if (text.compare(pos, word.size(), word) != 0) return std::nullopt;
            pos += word.size();
        }
        if (bounded_back_ && pos < text.size() && detail::is_word_char(text[pos])) return std::nullopt;
        return pos;
    }

    std::vector<std::u32string> words_;
    bool bounded_front_ = false;
    bool bounded_back_ = false;
};

/// Case-insensitive, diacritic-sensitive, word-bounded phrase count.
inline std::size_t match_phrase(std::string_view text, std::string_view phrase) {
    return CompiledPhrase(phrase).count_in(FoldedText::from_utf8(text));
}

inline void validate(const PhraseSet& ps) {
    if (ps.name.empty()) throw ParseError("phrase set without a name");
    if (ps.phrases.empty()) throw ParseError("phrase set '" + ps.name + "' has no phrases");
    for (const auto& p : ps.phrases) {
        if (p.empty()) throw ParseError("phrase set '" + ps.name + "' contains an empty phrase");
        const auto cps = FoldedText::from_utf8(p).code_points();
        if (cps.empty() || detail::is_space(cps.front()) || detail::is_space(cps.back()))
            throw ParseError("phrase '" + p + "' in set '" + ps.name + "' has surrounding whitespace");
    }
}

/// Per-document match result for one phrase set.
struct MatchResult {
    bool matches = false;
    std::size_t occurrences = 0;
};

/// Phrase set compiled once and applied to many documents.
class CompiledPhraseSet {
public:
    explicit CompiledPhraseSet(const PhraseSet& ps) : name_(ps.name), mode_(ps.match_mode) {
        for (const auto& p : ps.phrases) phrases_.emplace_back(p);
    }

    const std::string& name() const noexcept { return name_; }
    MatchMode mode() const noexcept { return mode_; }

    MatchResult apply(const FoldedText& text) const {
        MatchResult r;
        for (const auto& p : phrases_) r.occurrences += p.count_in(text);
        r.matches = r.occurrences > 0;
        return r;
    }

private:
    std::string name_;
    MatchMode mode_;
    std::vector<CompiledPhrase> phrases_;
};

inline bool doc_matches(const Document& doc, const PhraseSet& ps) {
    return CompiledPhraseSet(ps).apply(FoldedText::from_utf8(doc.text)).matches;
}

// ---------------------------------------------------------------------------
// Per-period aggregation
// ---------------------------------------------------------------------------

struct MentionRow {
    Period period;
    std::int64_t n_docs = 0;
    std::int64_t n_matching_docs = 0;
    std::int64_t n_occurrences = 0;
    std::optional<double> share;  // empty when n_docs == 0

    friend bool operator==(const MentionRow&, const MentionRow&) = default;
};

struct MentionSeries {
    std::string outlet;
    std::string phrase_set;
    Granularity granularity = Granularity::monthly;
    std::vector<MentionRow> rows;

    friend bool operator==(const MentionSeries&, const MentionSeries&) = default;
};

struct DateSanity {
    Date min = Date{std::chrono::year{1900}, std::chrono::January, std::chrono::day{1}};
    Date max = Date{std::chrono::year{2100}, std::chrono::January, std::chrono::day{1}};
};

inline void check_dates(const std::vector<Document>& docs, const DateSanity& sanity) {
    std::vector<std::string> bad;
    for (const auto& d : docs)
        if (!d.date.ok() || d.date < sanity.min || d.date > sanity.max) bad.push_back(d.id);
    if (!bad.empty()) {
        std::sort(bad.begin(), bad.end());
        throw DateOutOfRange(std::move(bad));
    }
}

namespace detail {

struct Tally {
    std::int64_t n_docs = 0;
    std::int64_t n_matching = 0;
    std::int64_t n_occurrences = 0;
};

inline std::vector<MentionRow> fill_rows(const std::map<Period, Tally>& tallies) {
    std::vector<MentionRow> rows;
    if (tallies.empty()) return rows;
    const Period first = tallies.begin()->first;
    const Period last = tallies.rbegin()->first;
    for (Period p = first; p <= last; p = p.next()) {
        MentionRow row{p};
        if (auto it = tallies.find(p); it != tallies.end()) {
            row.n_docs = it->second.n_docs;
            row.n_matching_docs = it->second.n_matching;
            row.n_occurrences = it->second.n_occurrences;
        }
        if (row.n_docs > 0)
            row.share = static_cast<double>(row.n_matching_docs) / static_cast<double>(row.n_docs);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace detail

/// Per-outlet mention series. Rows run gap-free from each outlet's first to
/// last document period.
inline std::map<std::string, MentionSeries> aggregate(const std::vector<Document>& docs,
                                                      const PhraseSet& ps, Granularity g,
                                                      const DateSanity& sanity = {}) {
    check_dates(docs, sanity);
    const CompiledPhraseSet compiled(ps);
    std::map<std::string, std::map<Period, detail::Tally>> tallies;
    for (const auto& doc : docs) {
        const auto r = compiled.apply(FoldedText::from_utf8(doc.text));
        auto& t = tallies[doc.outlet][Period::containing(g, doc.date)];
        ++t.n_docs;
        t.n_matching += r.matches ? 1 : 0;
        t.n_occurrences += static_cast<std::int64_t>(r.occurrences);
    }
    std::map<std::string, MentionSeries> out;
    for (const auto& [outlet, by_period] : tallies)
        out[outlet] = MentionSeries{outlet, ps.name, g, detail::fill_rows(by_period)};
    return out;
}

/// Sums counts into a coarser granularity and recomputes shares.
inline MentionSeries rebucket(const MentionSeries& s, Granularity target) {
    if (static_cast<int>(target) < static_cast<int>(s.granularity))
        throw std::invalid_argument("rebucket: target granularity must not be finer than the source");
    std::map<Period, detail::Tally> tallies;
    for (const auto& row : s.rows) {
        auto& t = tallies[row.period.convert(target)];
        t.n_docs += row.n_docs;
        t.n_matching += row.n_matching_docs;
        t.n_occurrences += row.n_occurrences;
    }
    return MentionSeries{s.outlet, s.phrase_set, target, detail::fill_rows(tallies)};
}

/// Counts per phrase set and period, pooled over outlets. The metric per
/// set follows its match_mode: matching documents or summed occurrences.
struct CountTable {
    Granularity granularity = Granularity::yearly;
    std::vector<std::string> phrase_sets;
    std::vector<Period> periods;
    std::vector<std::int64_t> n_docs;               // per period
    std::vector<std::vector<std::int64_t>> counts;  // [set][period]

    friend bool operator==(const CountTable&, const CountTable&) = default;
};

inline CountTable count_table(const std::vector<Document>& docs, const std::vector<PhraseSet>& sets,
                              Granularity g = Granularity::yearly,
                              std::optional<Window> range = std::nullopt,
                              const DateSanity& sanity = {}) {
    if (sets.empty()) throw std::invalid_argument("count_table needs at least one phrase set");
    check_dates(docs, sanity);

    std::vector<CompiledPhraseSet> compiled;
    compiled.reserve(sets.size());
    for (const auto& s : sets) compiled.emplace_back(s);

    std::map<Period, std::vector<std::int64_t>> cells;
    std::map<Period, std::int64_t> totals;
    for (const auto& doc : docs) {
        const Period p = Period::containing(g, doc.date);
        auto& row = cells[p];
        row.resize(sets.size(), 0);
        ++totals[p];
        const auto text = FoldedText::from_utf8(doc.text);
        for (std::size_t s = 0; s < compiled.size(); ++s) {
            const auto r = compiled[s].apply(text);
            row[s] += compiled[s].mode() == MatchMode::contains_document
                          ? (r.matches ? 1 : 0)
                          : static_cast<std::int64_t>(r.occurrences);
        }
    }

    CountTable table;
    table.granularity = g;
    for (const auto& s : sets) table.phrase_sets.push_back(s.name);
    table.counts.assign(sets.size(), {});

    std::optional<Period> first, last;
    if (range) {
        first = range->start.convert(g);
        last = range->end.convert(g);
    } else if (!cells.empty()) {
        first = cells.begin()->first;
        last = cells.rbegin()->first;
    }
    if (!first) return table;
    for (Period p = *first; p <= *last; p = p.next()) {
        table.periods.push_back(p);
        auto it = cells.find(p);
        table.n_docs.push_back(it == cells.end() ? 0 : totals.at(p));
        for (std::size_t s = 0; s < sets.size(); ++s)
            table.counts[s].push_back(it == cells.end() ? 0 : it->second[s]);
    }
    return table;
}

}  // namespace climattn
