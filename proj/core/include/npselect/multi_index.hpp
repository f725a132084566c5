#ifndef NPSELECT_MULTI_INDEX_HPP
#define NPSELECT_MULTI_INDEX_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace npselect {

// Sparse integer frequency vector k in Z^d: only the nonzero coordinates
// are stored. Support indices are 1-based ({1..d}, matching the x1..xd
// column naming of data files) and strictly increasing; every stored value
// is nonzero. The zero frequency is represented by an empty support.
struct MultiIndex {
    int dimension = 0;
    std::vector<int> support;  // strictly increasing, in {1..d}
    std::vector<int> values;   // same length as support, all nonzero

    MultiIndex() = default;
    MultiIndex(int dim, std::vector<int> supp, std::vector<int> vals)
        : dimension(dim), support(std::move(supp)), values(std::move(vals)) {
        validate();
    }

    static MultiIndex zero(int dim) {
        MultiIndex k;
        k.dimension = dim;
        if (dim < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
        return k;
    }

    int norm0() const { return static_cast<int>(support.size()); }

    long long norm2_sq() const {
        long long s = 0;
        for (int v : values) s += static_cast<long long>(v) * v;
        return s;
    }

    bool is_zero() const { return support.empty(); }

    // Canonical representative: zero, or first nonzero value positive.
    bool is_canonical() const { return support.empty() || values.front() > 0; }

    bool operator==(const MultiIndex& o) const {
        return dimension == o.dimension && support == o.support && values == o.values;
    }

    void validate() const {
        if (dimension < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
        if (support.size() != values.size())
            throw std::invalid_argument("MultiIndex: support/values length mismatch");
        int prev = 0;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (support[i] <= prev || support[i] > dimension)
                throw std::invalid_argument("MultiIndex: support must be strictly increasing in {1..d}");
            if (values[i] == 0)
                throw std::invalid_argument("MultiIndex: values must be nonzero");
            prev = support[i];
        }
    }

    std::string to_string() const;
};

}  // namespace npselect

#endif
