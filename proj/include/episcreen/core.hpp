#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace episcreen {

using EventId = int;
using Timestamp = int;

// Thrown by parsers; line is 1-based, 0 when no line applies.
struct ParseError : std::runtime_error {
    int line;
    std::string bare;  // message without the line prefix, for rethrowing
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_), bare(msg) {}
};

// Interns event labels to dense ids in first-seen order.
class Alphabet {
public:
    // Labels may not be empty or contain tab, comma, newline, '-' or '>'.
    // Those characters delimit the sequence and episode file formats.
    static bool valid_label(const std::string& label);

    EventId intern(const std::string& label);
    std::optional<EventId> find(const std::string& label) const;
    const std::string& label(EventId id) const;
    int size() const { return static_cast<int>(labels_.size()); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, EventId> ids_;
};

// One long sequence over timestamps 1..n; slots may be empty. Slots hold
// sorted unique ids. Immutable after construction by parser or generator.
struct EventSequence {
    int n = 0;
    std::vector<std::vector<EventId>> slots;  // slots[t-1]
    Alphabet alphabet;

    const std::vector<EventId>& slot(Timestamp t) const { return slots[t - 1]; }
    bool contains(Timestamp t, EventId e) const;
};

// Serial episode: ordered events, repeats allowed. alphabet_of lists the
// distinct ids in first-occurrence order; partition bitmasks index into it.
struct Episode {
    std::vector<EventId> events;
    std::vector<EventId> alphabet_of;

    static Episode of(std::vector<EventId> evs);
    int length() const { return static_cast<int>(events.size()); }
    bool empty() const { return events.empty(); }
    std::string to_string(const Alphabet& a) const;  // "a->b->c"
};

struct Window {
    Timestamp start;
    Timestamp end;
    friend bool operator==(const Window&, const Window&) = default;
};

// Sequence file format:
//   # length=N
//   t<TAB>label(,label)*        strictly increasing t; absent t = empty slot
EventSequence parse_sequence(const std::string& text);

// Canonical form: labels sorted within a slot, empty slots omitted, LF endings.
std::string serialize_sequence(const EventSequence& seq);

int event_support(const EventSequence& seq, EventId e);
double p_ind(const EventSequence& seq, EventId e);

// True iff beta embeds into alpha at strictly increasing positions.
bool is_subepisode(const Episode& beta, const Episode& alpha);

// First j events; j=0 yields the empty episode. Throws on j out of [0, k].
Episode prefix_of(const Episode& alpha, int j);

// Episode text is "e1->e2->e3". Labels are interned into the alphabet.
Episode parse_episode(const std::string& text, Alphabet& alphabet);

// Episode list file: one "e1->e2" per line, optional "<TAB><support>".
struct EpisodeEntry {
    Episode episode;
    std::optional<long long> support;
};
std::vector<EpisodeEntry> parse_episode_list(const std::string& text, Alphabet& alphabet);
std::string serialize_episode_list(const std::vector<EpisodeEntry>& entries, const Alphabet& alphabet);

// Label-sequence comparison used everywhere output order matters.
bool episode_label_less(const Episode& x, const Episode& y, const Alphabet& a);

}  // namespace episcreen
