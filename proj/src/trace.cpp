#include "tracecx/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>

#include "tracecx/error.hpp"

namespace tracecx {

namespace {

std::vector<EndpointId> sorted_unique(std::vector<EndpointId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

bool sorted_contains(const std::vector<EndpointId>& ids, EndpointId id) {
    return std::binary_search(ids.begin(), ids.end(), id);
}

int decimal_digits(EndpointId value) {
    int digits = 1;
    while (value >= 10) {
        value /= 10;
        ++digits;
    }
    return digits;
}

// Splits one line on `delim`, leaving fields as views into the line.
std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

IdSpace IdSpace::from_entries(std::span<const TraceEntry> entries) {
    IdSpace space;
    std::vector<EndpointId> src, dst;
    src.reserve(entries.size());
    dst.reserve(entries.size());
    // Dense canonical IDs make a presence bitmap cheaper than sorting t values.
    EndpointId max_id = 0;
    for (const auto& e : entries) max_id = std::max({max_id, e.source, e.destination});
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(max_id) + 1, 0);
    for (const auto& e : entries) {
        seen[e.source] |= 1;
        seen[e.destination] |= 2;
    }
    for (EndpointId id = 0; id < seen.size(); ++id) {
        if (seen[id] & 1) space.sources_.push_back(id);
        if (seen[id] & 2) space.dests_.push_back(id);
        if (seen[id]) space.union_.push_back(id);
    }
    return space;
}

IdSpace IdSpace::from_sets(std::vector<EndpointId> sources, std::vector<EndpointId> dests) {
    IdSpace space;
    space.sources_ = sorted_unique(std::move(sources));
    space.dests_ = sorted_unique(std::move(dests));
    std::set_union(space.sources_.begin(), space.sources_.end(), space.dests_.begin(),
                   space.dests_.end(), std::back_inserter(space.union_));
    return space;
}

bool IdSpace::has_source(EndpointId id) const { return sorted_contains(sources_, id); }
bool IdSpace::has_destination(EndpointId id) const { return sorted_contains(dests_, id); }
bool IdSpace::contains(EndpointId id) const { return sorted_contains(union_, id); }

double IdSpace::asymmetry() const {
    if (union_.empty()) return 0.0;
    std::vector<EndpointId> common;
    std::set_intersection(sources_.begin(), sources_.end(), dests_.begin(), dests_.end(),
                          std::back_inserter(common));
    return static_cast<double>(union_.size() - common.size()) /
           static_cast<double>(union_.size());
}

Trace::Trace(std::string name, std::vector<TraceEntry> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
    if (entries_.empty()) throw EmptyTraceError("trace '" + name_ + "' has no entries");
    ids_ = IdSpace::from_entries(entries_);
}

Trace::Trace(std::string name, std::vector<TraceEntry> entries, IdSpace ids,
             int column_count)
    : name_(std::move(name)),
      entries_(std::move(entries)),
      ids_(std::move(ids)),
      column_count_(column_count) {
    if (entries_.empty()) throw EmptyTraceError("trace '" + name_ + "' has no entries");
    if (column_count_ != 1 && column_count_ != 2)
        throw ConfigError("column count must be 1 or 2");
    std::vector<std::uint8_t> allowed(static_cast<std::size_t>(ids_.max_id()) + 1, 0);
    for (auto id : ids_.source_ids()) allowed[id] |= 1;
    for (auto id : ids_.dest_ids()) allowed[id] |= 2;
    for (const auto& e : entries_) {
        if (e.source >= allowed.size() || !(allowed[e.source] & 1) ||
            e.destination >= allowed.size() || !(allowed[e.destination] & 2))
            throw ConfigError("trace '" + name_ + "' has an entry outside its id space");
    }
}

Trace Trace::with_entries(std::string name, std::vector<TraceEntry> entries) const {
    Trace out(std::move(name), std::move(entries), ids_, column_count_);
    out.labels_ = labels_;
    return out;
}

EndpointId IdMapping::intern(std::string_view raw) {
    auto [it, inserted] =
        index.try_emplace(std::string(raw), static_cast<EndpointId>(labels.size()));
    if (inserted) labels.emplace_back(raw);
    return it->second;
}

IdMapping canonicalize_ids(std::span<const std::string> raw_ids) {
    IdMapping mapping;
    for (const auto& raw : raw_ids) mapping.intern(raw);
    return mapping;
}

Trace parse_trace(std::istream& in, const CsvOptions& options, std::string name) {
    if (options.source_column == options.destination_column)
        throw ConfigError("source and destination columns must differ");
    const std::size_t needed = std::max(options.source_column, options.destination_column) + 1;

    IdMapping mapping;
    std::vector<TraceEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = options.skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        auto fields = split_fields(view, options.delimiter);
        if (fields.size() < needed)
            throw ParseError("expected at least " + std::to_string(needed) + " columns, got " +
                                 std::to_string(fields.size()),
                             line_no);
        auto src = trim(fields[options.source_column]);
        auto dst = trim(fields[options.destination_column]);
        if (src.empty() || dst.empty()) throw ParseError("empty endpoint id", line_no);
        TraceEntry e;
        e.source = mapping.intern(src);
        e.destination = mapping.intern(dst);
        entries.push_back(e);
    }
    if (in.bad()) throw ParseError("read failure in '" + name + "'");
    if (entries.empty()) throw EmptyTraceError("trace '" + name + "' has no entries");
    Trace trace(std::move(name), std::move(entries));
    trace.set_labels(std::move(mapping.labels));
    return trace;
}

Trace load_trace(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open trace file '" + path + "'");
    try {
        return parse_trace(in, options, path);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

int encoding_width(const Trace& trace) { return decimal_digits(trace.ids().max_id()); }

std::vector<std::uint8_t> encode_canonical(const Trace& trace) {
    const int width = encoding_width(trace);
    const std::size_t record = 2 * static_cast<std::size_t>(width) + 2;
    std::vector<std::uint8_t> out(trace.size() * record);

    auto put = [width](std::uint8_t* dst, EndpointId value) {
        for (int i = width - 1; i >= 0; --i) {
            dst[i] = static_cast<std::uint8_t>('0' + value % 10);
            value /= 10;
        }
    };
    std::uint8_t* p = out.data();
    for (const auto& e : trace.entries()) {
        put(p, e.source);
        p[width] = ',';
        put(p + width + 1, e.destination);
        p[record - 1] = '\n';
        p += record;
    }
    return out;
}

void save_trace(const Trace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write trace file '" + path + "'");
    auto bytes = encode_canonical(trace);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

Trace slice_column(const Trace& trace, Column which) {
    std::vector<TraceEntry> entries;
    entries.reserve(trace.size());
    for (const auto& e : trace.entries()) {
        EndpointId c = which == Column::source ? e.source : e.destination;
        entries.push_back({c, c});
    }
    std::string suffix = which == Column::source ? "#src" : "#dst";
    const auto& all = trace.ids().union_ids();
    Trace out(trace.name() + suffix, std::move(entries), IdSpace::from_sets(all, all), 1);
    out.set_labels(trace.labels());
    return out;
}

}  // namespace tracecx
