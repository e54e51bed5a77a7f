#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wittflow::sampling {

// Sobol sequence with gray-code indexing and direct random access by point
// index. Direction numbers load from the conventional text layout: a header
// line, then one line per dimension "d s a m_1 ... m_s" (dimension 1 is the
// implicit van der Corput dimension and has no line).
class SobolTable {
public:
    static constexpr int kBits = 52;  // matches the double mantissa budget

    static SobolTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("SobolTable: cannot open " + path);

        SobolTable table;
        table.dir_.push_back(van_der_corput());

        std::string line;
        int lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            if (line.empty()) continue;
            std::istringstream fields(line);
            long long d = 0;
            if (!(fields >> d)) {
                if (lineNo == 1) continue;  // column header
                throw std::runtime_error("SobolTable: malformed line " + std::to_string(lineNo));
            }
            long long s = 0, aCode = 0;
            if (!(fields >> s >> aCode) || s < 1 || s > kBits || aCode < 0)
                throw std::runtime_error("SobolTable: malformed line " + std::to_string(lineNo));
            std::vector<std::uint64_t> m;
            m.reserve(static_cast<std::size_t>(s));
            for (long long k = 0; k < s; ++k) {
                long long v = 0;
                if (!(fields >> v) || v < 1)
                    throw std::runtime_error("SobolTable: malformed line " + std::to_string(lineNo));
                m.push_back(static_cast<std::uint64_t>(v));
            }
            if (m[0] % 2 == 0)
                throw std::runtime_error("SobolTable: even m_1 on line " + std::to_string(lineNo));
            table.dir_.push_back(expand(static_cast<int>(s), static_cast<std::uint64_t>(aCode), m));
        }
        if (table.dir_.size() < 2) throw std::runtime_error("SobolTable: no dimensions in " + path);
        return table;
    }

    int dimension() const { return static_cast<int>(dir_.size()); }

    // Point `index` (>= 1; index 0 is the skipped all-zeros point) in
    // coordinate `coord` (0-based). Gray-code XOR of the direction numbers.
    double point(std::uint64_t index, int coord) const {
        if (index == 0) throw std::invalid_argument("SobolTable::point: index must be >= 1");
        if (index >> kBits != 0) throw std::invalid_argument("SobolTable::point: index too large");
        if (coord < 0 || coord >= dimension())
            throw std::out_of_range("SobolTable::point: coordinate beyond the table");
        const auto& v = dir_[static_cast<std::size_t>(coord)];
        std::uint64_t gray = index ^ (index >> 1);
        std::uint64_t acc = 0;
        for (int bit = 0; gray != 0; ++bit, gray >>= 1)
            if (gray & 1u) acc ^= v[static_cast<std::size_t>(bit)];
        return static_cast<double>(acc) * 0x1p-52;
    }

private:
    static std::array<std::uint64_t, kBits> van_der_corput() {
        std::array<std::uint64_t, kBits> v{};
        for (int k = 0; k < kBits; ++k) v[static_cast<std::size_t>(k)] = 1ull << (kBits - 1 - k);
        return v;
    }

    // m_k recurrence past the seeded values: XOR of the shifted older m's as
    // dictated by the primitive-polynomial bits in aCode
    static std::array<std::uint64_t, kBits> expand(int s, std::uint64_t aCode,
                                                   std::vector<std::uint64_t> m) {
        for (int k = static_cast<int>(m.size()); k < kBits; ++k) {
            std::uint64_t next = m[static_cast<std::size_t>(k - s)] ^
                                 (m[static_cast<std::size_t>(k - s)] << s);
            for (int j = 1; j < s; ++j)
                if ((aCode >> (s - 1 - j)) & 1u) next ^= m[static_cast<std::size_t>(k - j)] << j;
            m.push_back(next);
        }
        std::array<std::uint64_t, kBits> v{};
        for (int k = 0; k < kBits; ++k)
            v[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(k)] << (kBits - 1 - k);
        return v;
    }

    std::vector<std::array<std::uint64_t, kBits>> dir_;
};

}  // namespace wittflow::sampling
