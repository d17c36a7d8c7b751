#pragma once

#include <cstddef>
#include <vector>

#include "semialg/rational.hpp"

namespace semialg {

// Block construction: n-1 descending blocks of s-1 ascending values, length
// (s-1)(n-1), no increasing subsequence of length s and no decreasing one of
// length n.
std::vector<Rat> es_extremal_sequence(unsigned s, unsigned n);

struct MonotoneWitness {
    std::size_t inc_len = 0;
    std::vector<std::size_t> inc;  // indices of one longest increasing subsequence
    std::size_t dec_len = 0;
    std::vector<std::size_t> dec;
};

// Exact longest strictly-increasing and strictly-decreasing subsequences by
// dynamic program; the input values must be distinct.
MonotoneWitness longest_monotone(const std::vector<Rat>& seq);

}  // namespace semialg
