#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace tracecx {

enum class Backend { lzma, deflate };

/// Names a compression backend and pins every setting that affects its
/// output size. Two equal handles always produce equal sizes for equal input.
///
/// The LZMA defaults are preset 9 with the longest match length (273): the
/// long match limit lets a burst of repeated records collapse into very few
/// matches, which keeps the measured temporal ratio near the entropy rate.
struct CompressorHandle {
    Backend backend = Backend::lzma;
    int level = 9;

    // LZMA2 only.
    std::uint32_t dict_size = 64u << 20;
    std::uint32_t nice_len = 273;
    std::uint32_t lc = 3;
    std::uint32_t lp = 0;
    std::uint32_t pb = 2;
    bool extreme = false;

    // DEFLATE only: log2 of the window, 8..15.
    int window_bits = 15;

    std::string name() const;

    friend bool operator==(const CompressorHandle&, const CompressorHandle&) = default;
};

/// Handle with the defaults for `name` ("lzma" or "deflate"). Throws
/// ConfigError for anything else.
CompressorHandle compressor_from_name(std::string_view name);

/// Environment variable consulted by default_compressor().
inline constexpr const char* compressor_env_var = "TRACECX_COMPRESSOR";

/// LZMA unless TRACECX_COMPRESSOR names another backend.
CompressorHandle default_compressor();

/// Size of the raw compressed stream: no file container, header, or
/// checksum. Throws EmptyTraceError on empty input and ConfigError if the
/// backend rejects the settings.
std::size_t compressed_size(std::span<const std::uint8_t> bytes, const CompressorHandle& compressor);

}  // namespace tracecx
