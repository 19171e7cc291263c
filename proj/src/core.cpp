#include "episcreen/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace episcreen {

bool Alphabet::valid_label(const std::string& label) {
    if (label.empty()) return false;
    for (char c : label) {
        if (c == '\t' || c == ',' || c == '\n' || c == '-' || c == '>') return false;
    }
    return true;
}

EventId Alphabet::intern(const std::string& label) {
    auto it = ids_.find(label);
    if (it != ids_.end()) return it->second;
    if (!valid_label(label)) {
        throw std::invalid_argument("invalid event label: '" + label + "'");
    }
    const EventId id = static_cast<EventId>(labels_.size());
    labels_.push_back(label);
    ids_.emplace(label, id);
    return id;
}

std::optional<EventId> Alphabet::find(const std::string& label) const {
    auto it = ids_.find(label);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& Alphabet::label(EventId id) const {
    if (id < 0 || id >= size()) throw std::out_of_range("unknown event id");
    return labels_[static_cast<size_t>(id)];
}

bool EventSequence::contains(Timestamp t, EventId e) const {
    const auto& s = slots[t - 1];
    return std::binary_search(s.begin(), s.end(), e);
}

Episode Episode::of(std::vector<EventId> evs) {
    Episode ep;
    ep.events = std::move(evs);
    for (EventId e : ep.events) {
        if (std::find(ep.alphabet_of.begin(), ep.alphabet_of.end(), e) == ep.alphabet_of.end()) {
            ep.alphabet_of.push_back(e);
        }
    }
    return ep;
}

std::string Episode::to_string(const Alphabet& a) const {
    std::string out;
    for (size_t i = 0; i < events.size(); ++i) {
        if (i) out += "->";
        out += a.label(events[i]);
    }
    return out;
}

namespace {

// Parses a positive decimal integer; rejects junk and overflow.
std::optional<long long> parse_int(std::string_view s) {
    long long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last) return std::nullopt;
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

}  // namespace

EventSequence parse_sequence(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) throw ParseError(1, "missing length header");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string prefix = "# length=";
    if (line.rfind(prefix, 0) != 0) throw ParseError(lineno, "missing length header '# length=N'");
    auto n = parse_int(std::string_view(line).substr(prefix.size()));
    if (!n || *n <= 0) throw ParseError(lineno, "length must be a positive integer");

    EventSequence seq;
    seq.n = static_cast<int>(*n);
    seq.slots.assign(static_cast<size_t>(seq.n), {});

    long long prev_t = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(lineno, "expected '<t>\\t<labels>'");
        auto t = parse_int(std::string_view(line).substr(0, tab));
        if (!t) throw ParseError(lineno, "bad timestamp");
        if (*t < 1 || *t > seq.n) throw ParseError(lineno, "timestamp out of 1..n");
        if (*t == prev_t) throw ParseError(lineno, "duplicate timestamp line");
        if (*t < prev_t) throw ParseError(lineno, "non-increasing timestamps");
        prev_t = *t;

        auto& slot = seq.slots[static_cast<size_t>(*t - 1)];
        for (const std::string& label : split(line.substr(tab + 1), ',')) {
            if (!Alphabet::valid_label(label)) throw ParseError(lineno, "invalid event label '" + label + "'");
            const EventId id = seq.alphabet.intern(label);
            if (std::find(slot.begin(), slot.end(), id) != slot.end()) {
                throw ParseError(lineno, "duplicate event '" + label + "' in one slot");
            }
            slot.push_back(id);
        }
        std::sort(slot.begin(), slot.end());
    }
    return seq;
}

std::string serialize_sequence(const EventSequence& seq) {
    std::string out = "# length=" + std::to_string(seq.n) + "\n";
    std::vector<std::string> labels;
    for (Timestamp t = 1; t <= seq.n; ++t) {
        const auto& slot = seq.slot(t);
        if (slot.empty()) continue;
        labels.clear();
        for (EventId e : slot) labels.push_back(seq.alphabet.label(e));
        std::sort(labels.begin(), labels.end());
        out += std::to_string(t);
        out += '\t';
        for (size_t i = 0; i < labels.size(); ++i) {
            if (i) out += ',';
            out += labels[i];
        }
        out += '\n';
    }
    return out;
}

int event_support(const EventSequence& seq, EventId e) {
    if (e < 0 || e >= seq.alphabet.size()) throw std::out_of_range("unknown event id");
    int count = 0;
    for (const auto& slot : seq.slots) {
        if (std::binary_search(slot.begin(), slot.end(), e)) ++count;
    }
    return count;
}

double p_ind(const EventSequence& seq, EventId e) {
    return static_cast<double>(event_support(seq, e)) / static_cast<double>(seq.n);
}

bool is_subepisode(const Episode& beta, const Episode& alpha) {
    // Greedy left-to-right embedding; strictly increasing positions.
    size_t pos = 0;
    for (EventId b : beta.events) {
        while (pos < alpha.events.size() && alpha.events[pos] != b) ++pos;
        if (pos == alpha.events.size()) return false;
        ++pos;
    }
    return true;
}

Episode prefix_of(const Episode& alpha, int j) {
    if (j < 0 || j > alpha.length()) throw std::out_of_range("prefix length out of range");
    return Episode::of({alpha.events.begin(), alpha.events.begin() + j});
}

Episode parse_episode(const std::string& text, Alphabet& alphabet) {
    if (text.empty()) throw ParseError(0, "empty episode");
    std::vector<EventId> events;
    size_t pos = 0;
    while (true) {
        size_t arrow = text.find("->", pos);
        const std::string label =
            (arrow == std::string::npos) ? text.substr(pos) : text.substr(pos, arrow - pos);
        if (!Alphabet::valid_label(label)) throw ParseError(0, "invalid event label '" + label + "'");
        events.push_back(alphabet.intern(label));
        if (arrow == std::string::npos) break;
        pos = arrow + 2;
    }
    return Episode::of(std::move(events));
}

std::vector<EpisodeEntry> parse_episode_list(const std::string& text, Alphabet& alphabet) {
    std::vector<EpisodeEntry> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        EpisodeEntry entry;
        const size_t tab = line.find('\t');
        std::string ep_text = (tab == std::string::npos) ? line : line.substr(0, tab);
        if (tab != std::string::npos) {
            auto sup = parse_int(std::string_view(line).substr(tab + 1));
            if (!sup || *sup < 0) throw ParseError(lineno, "bad support value");
            entry.support = *sup;
        }
        try {
            entry.episode = parse_episode(ep_text, alphabet);
        } catch (const ParseError& e) {
            throw ParseError(lineno, e.bare);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string serialize_episode_list(const std::vector<EpisodeEntry>& entries, const Alphabet& alphabet) {
    std::string out;
    for (const auto& entry : entries) {
        out += entry.episode.to_string(alphabet);
        if (entry.support) {
            out += '\t';
            out += std::to_string(*entry.support);
        }
        out += '\n';
    }
    return out;
}

bool episode_label_less(const Episode& x, const Episode& y, const Alphabet& a) {
    const size_t m = std::min(x.events.size(), y.events.size());
    for (size_t i = 0; i < m; ++i) {
        const std::string& lx = a.label(x.events[i]);
        const std::string& ly = a.label(y.events[i]);
        if (lx != ly) return lx < ly;
    }
    return x.events.size() < y.events.size();
}

}  // namespace episcreen
