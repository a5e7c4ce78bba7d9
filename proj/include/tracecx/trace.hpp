#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tracecx {

using EndpointId = std::uint32_t;

struct TraceEntry {
    EndpointId source = 0;
    EndpointId destination = 0;

    friend auto operator<=>(const TraceEntry&, const TraceEntry&) = default;
};

/// The set of canonical IDs a trace draws from, split by column.
///
/// Canonical IDs are small non-negative integers, so membership is a bitmap. The
/// union size n = |S u D| is what the uniform transform samples from and what
/// normalizes the non-temporal ratio.
class IdSpace {
public:
    IdSpace() = default;

    /// Collects the observed source and destination IDs of `entries`.
    static IdSpace from_entries(std::span<const TraceEntry> entries);

    /// Explicit column sets; inputs need not be sorted or unique.
    static IdSpace from_sets(std::vector<EndpointId> sources, std::vector<EndpointId> dests);

    const std::vector<EndpointId>& source_ids() const noexcept { return sources_; }
    const std::vector<EndpointId>& dest_ids() const noexcept { return dests_; }
    /// Sorted S u D.
    const std::vector<EndpointId>& union_ids() const noexcept { return union_; }
    std::size_t n() const noexcept { return union_.size(); }
    EndpointId max_id() const noexcept { return union_.empty() ? 0 : union_.back(); }

    bool has_source(EndpointId id) const;
    bool has_destination(EndpointId id) const;
    bool contains(EndpointId id) const;

    /// |S xor D| / |S u D|; 0 for perfectly symmetric column sets.
    double asymmetry() const;

private:
    std::vector<EndpointId> sources_;
    std::vector<EndpointId> dests_;
    std::vector<EndpointId> union_;
};

enum class Column { source, destination };

/// An ordered sequence of (source, destination) records. Immutable once built.
class Trace {
public:
    /// Builds the IdSpace from the entries. Throws EmptyTraceError if empty.
    Trace(std::string name, std::vector<TraceEntry> entries);

    /// Uses an explicit IdSpace, which must contain every entry's IDs (on
    /// the right column). Transforms use this to keep the original universe
    /// and encoding width.
    Trace(std::string name, std::vector<TraceEntry> entries, IdSpace ids,
          int column_count = 2);

    const std::string& name() const noexcept { return name_; }
    std::span<const TraceEntry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const IdSpace& ids() const noexcept { return ids_; }

    /// 2 for pair traces, 1 for a single-column slice (see slice_column).
    int column_count() const noexcept { return column_count_; }

    /// Raw labels indexed by canonical ID, when the trace was parsed from a
    /// file. Empty for synthetic traces.
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

    Trace with_entries(std::string name, std::vector<TraceEntry> entries) const;

private:
    std::string name_;
    std::vector<TraceEntry> entries_;
    IdSpace ids_;
    int column_count_ = 2;
    std::vector<std::string> labels_;
};

/// Raw ID -> canonical ID, assigned densely by first occurrence.
struct IdMapping {
    std::unordered_map<std::string, EndpointId> index;
    std::vector<std::string> labels;  // canonical -> raw

    std::size_t size() const noexcept { return labels.size(); }
    EndpointId at(const std::string& raw) const { return index.at(raw); }
    /// Returns the existing ID or assigns the next free one.
    EndpointId intern(std::string_view raw);
};

IdMapping canonicalize_ids(std::span<const std::string> raw_ids);

struct CsvOptions {
    char delimiter = ',';
    std::size_t source_column = 0;
    std::size_t destination_column = 1;
    bool skip_header = false;
};

/// Reads a delimited text trace. Blank lines are skipped; columns other than
/// the two selected ones are ignored. IDs are canonicalized in reading order
/// (source before destination within a row).
Trace parse_trace(std::istream& in, const CsvOptions& options = {},
                  std::string name = "trace");

Trace load_trace(const std::string& path, const CsvOptions& options = {});

/// Number of decimal digits used for every ID in the canonical encoding.
int encoding_width(const Trace& trace);

/// Fixed-width decimal text, one "SSS,DDD\n" record per entry. The output is
/// exactly size() * (2 * width + 2) bytes.
std::vector<std::uint8_t> encode_canonical(const Trace& trace);

/// Writes encode_canonical(trace) to a file.
void save_trace(const Trace& trace, const std::string& path);

/// Single-column view of a trace: each entry becomes (c, c) where c is the
/// chosen column. The ID space stays the parent's S u D, so resampling a
/// slice draws from every endpoint of the trace.
Trace slice_column(const Trace& trace, Column which);

}  // namespace tracecx
