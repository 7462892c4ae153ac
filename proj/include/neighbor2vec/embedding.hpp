#ifndef NEIGHBOR2VEC_EMBEDDING_HPP
#define NEIGHBOR2VEC_EMBEDDING_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace neighbor2vec {

/// Dense row-major n x d matrix of node vectors.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    EmbeddingMatrix(std::size_t rows, std::size_t dim, float fill = 0.0f)
        : rows_(rows), dim_(dim), values_(rows * dim, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<float> row(std::size_t i) noexcept { return {values_.data() + i * dim_, dim_}; }
    std::span<const float> row(std::size_t i) const noexcept { return {values_.data() + i * dim_, dim_}; }

    float& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * dim_ + j]; }
    float operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * dim_ + j]; }

    std::span<float> values() noexcept { return values_; }
    std::span<const float> values() const noexcept { return values_; }

    bool all_finite() const noexcept {
        for (const float x : values_) {
            if (!std::isfinite(x)) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    std::vector<float> values_;
};

enum class EmbeddingFormat { text, binary };

/**
 * Text: header line "<n> <d>", then "<id> <f1> ... <fd>" per row using the
 * shortest decimal form that round-trips the float exactly.
 *
 * Binary: little-endian uint32 n, uint32 d, then n*d little-endian float32
 * values in row order.
 */
inline void write_embeddings(const EmbeddingMatrix& m, const std::string& path,
                             EmbeddingFormat format = EmbeddingFormat::text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCategory::io, "cannot write embeddings '" + path + "'");
    }
    if (format == EmbeddingFormat::text) {
        std::string line;
        out << m.rows() << ' ' << m.dim() << '\n';
        for (std::size_t i = 0; i < m.rows(); ++i) {
            line = std::to_string(i);
            for (const float x : m.row(i)) {
                line += ' ';
                line += detail::shortest(x);
            }
            line += '\n';
            out << line;
        }
    } else {
        auto put_u32 = [&](std::uint32_t x) {
            unsigned char bytes[4];
            for (int b = 0; b < 4; ++b) {
                bytes[b] = static_cast<unsigned char>(x >> (8 * b));
            }
            out.write(reinterpret_cast<const char*>(bytes), 4);
        };
        put_u32(static_cast<std::uint32_t>(m.rows()));
        put_u32(static_cast<std::uint32_t>(m.dim()));
        for (const float x : m.values()) {
            put_u32(std::bit_cast<std::uint32_t>(x));
        }
    }
    if (!out) {
        throw Error(ErrorCategory::io, "error writing '" + path + "'");
    }
}

inline EmbeddingMatrix read_embeddings(const std::string& path, EmbeddingFormat format = EmbeddingFormat::text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCategory::io, "cannot open embeddings '" + path + "'");
    }
    if (format == EmbeddingFormat::binary) {
        auto get_u32 = [&]() {
            unsigned char bytes[4];
            if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
                throw Error(ErrorCategory::parse, path + ": truncated binary embedding file");
            }
            std::uint32_t x = 0;
            for (int b = 0; b < 4; ++b) {
                x |= static_cast<std::uint32_t>(bytes[b]) << (8 * b);
            }
            return x;
        };
        const std::size_t rows = get_u32();
        const std::size_t dim = get_u32();
        EmbeddingMatrix m(rows, dim);
        for (float& x : m.values()) {
            x = std::bit_cast<float>(get_u32());
        }
        return m;
    }

    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) {
        throw Error(ErrorCategory::parse, path + ": empty embedding file");
    }
    auto header = detail::split_whitespace(line);
    std::size_t rows = 0;
    std::size_t dim = 0;
    if (header.size() != 2 || !detail::parse_number(header[0], rows) || !detail::parse_number(header[1], dim)) {
        detail::parse_error(path, line_no, "expected header '<n> <d>'");
    }
    EmbeddingMatrix m(rows, dim);
    std::vector<bool> seen(rows, false);
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = detail::split_whitespace(line);
        if (tokens.empty()) {
            continue;
        }
        std::size_t id = 0;
        if (!detail::parse_number(tokens[0], id) || id >= rows) {
            detail::parse_error(path, line_no, "row id missing or out of range");
        }
        if (tokens.size() != dim + 1) {
            detail::parse_error(path, line_no,
                                "expected " + std::to_string(dim) + " values, got " +
                                    std::to_string(tokens.size() - 1));
        }
        if (seen[id]) {
            detail::parse_error(path, line_no, "duplicate row " + std::to_string(id));
        }
        seen[id] = true;
        ++count;
        auto row = m.row(id);
        for (std::size_t j = 0; j < dim; ++j) {
            if (!detail::parse_number(tokens[j + 1], row[j])) {
                detail::parse_error(path, line_no, "malformed value '" + std::string(tokens[j + 1]) + "'");
            }
        }
    }
    if (count != rows) {
        throw Error(ErrorCategory::parse,
                    path + ": header declares " + std::to_string(rows) + " rows but " + std::to_string(count) +
                        " were present");
    }
    return m;
}

}

#endif
