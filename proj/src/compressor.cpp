#include "tracecx/compressor.hpp"

#include <lzma.h>
#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>

#include "tracecx/error.hpp"

namespace tracecx {

namespace {

constexpr std::size_t out_chunk = 1 << 16;

std::size_t lzma_size(std::span<const std::uint8_t> bytes, const CompressorHandle& c) {
    if (c.level < 0 || c.level > 9) throw ConfigError("lzma level must be in 0..9");
    lzma_options_lzma opts;
    std::uint32_t preset = static_cast<std::uint32_t>(c.level);
    if (c.extreme) preset |= LZMA_PRESET_EXTREME;
    if (lzma_lzma_preset(&opts, preset)) throw ConfigError("unsupported lzma preset");
    opts.dict_size = c.dict_size;
    opts.nice_len = c.nice_len;
    opts.lc = c.lc;
    opts.lp = c.lp;
    opts.pb = c.pb;

    std::array<lzma_filter, 2> filters{{{LZMA_FILTER_LZMA2, &opts},
                                        {LZMA_VLI_UNKNOWN, nullptr}}};
    lzma_stream strm = LZMA_STREAM_INIT;
    if (lzma_raw_encoder(&strm, filters.data()) != LZMA_OK) {
        lzma_end(&strm);
        throw ConfigError("lzma encoder rejected settings for " + c.name());
    }

    std::array<std::uint8_t, out_chunk> out;
    strm.next_in = bytes.data();
    strm.avail_in = bytes.size();
    std::size_t total = 0;
    lzma_ret ret = LZMA_OK;
    while (ret == LZMA_OK) {
        strm.next_out = out.data();
        strm.avail_out = out.size();
        ret = lzma_code(&strm, LZMA_FINISH);
        total += out.size() - strm.avail_out;
    }
    lzma_end(&strm);
    if (ret != LZMA_STREAM_END) throw ConfigError("lzma encoding failed");
    return total;
}

std::size_t deflate_size(std::span<const std::uint8_t> bytes, const CompressorHandle& c) {
    if (c.level < 0 || c.level > 9) throw ConfigError("deflate level must be in 0..9");
    if (c.window_bits < 9 || c.window_bits > 15)
        throw ConfigError("deflate window bits must be in 9..15");
    z_stream zs{};
    // Negative window bits select a raw stream without the zlib wrapper.
    if (deflateInit2(&zs, c.level, Z_DEFLATED, -c.window_bits, 9, Z_DEFAULT_STRATEGY) != Z_OK)
        throw ConfigError("deflate encoder rejected settings");

    std::array<std::uint8_t, out_chunk> out;
    std::size_t offset = 0;
    std::size_t total = 0;
    int ret = Z_OK;
    constexpr std::size_t max_in = std::numeric_limits<uInt>::max();
    while (ret != Z_STREAM_END) {
        if (zs.avail_in == 0 && offset < bytes.size()) {
            std::size_t take = std::min(max_in, bytes.size() - offset);
            zs.next_in = const_cast<Bytef*>(bytes.data() + offset);
            zs.avail_in = static_cast<uInt>(take);
            offset += take;
        }
        zs.next_out = out.data();
        zs.avail_out = static_cast<uInt>(out.size());
        ret = deflate(&zs, offset == bytes.size() ? Z_FINISH : Z_NO_FLUSH);
        if (ret == Z_STREAM_ERROR) {
            deflateEnd(&zs);
            throw ConfigError("deflate encoding failed");
        }
        total += out.size() - zs.avail_out;
    }
    deflateEnd(&zs);
    return total;
}

}  // namespace

std::string CompressorHandle::name() const {
    return backend == Backend::lzma ? "lzma" : "deflate";
}

CompressorHandle compressor_from_name(std::string_view name) {
    CompressorHandle handle;
    if (name == "lzma" || name == "lzma2" || name == "xz") {
        handle.backend = Backend::lzma;
    } else if (name == "deflate" || name == "zlib" || name == "gzip") {
        handle.backend = Backend::deflate;
    } else {
        throw ConfigError("unknown compressor '" + std::string(name) +
                          "' (expected lzma or deflate)");
    }
    return handle;
}

CompressorHandle default_compressor() {
    if (const char* env = std::getenv(compressor_env_var); env && *env)
        return compressor_from_name(env);
    return {};
}

std::size_t compressed_size(std::span<const std::uint8_t> bytes, const CompressorHandle& compressor) {
    if (bytes.empty()) throw EmptyTraceError("cannot measure the compressed size of empty input");
    switch (compressor.backend) {
        case Backend::lzma: return lzma_size(bytes, compressor);
        case Backend::deflate: return deflate_size(bytes, compressor);
    }
    throw ConfigError("unknown compressor backend");
}

}  // namespace tracecx
