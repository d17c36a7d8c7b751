#include "semialg/es_sequences.hpp"

#include <algorithm>
#include <set>

#include "semialg/errors.hpp"

namespace semialg {

std::vector<Rat> es_extremal_sequence(unsigned s, unsigned n) {
    if (s < 2 || n < 2) throw ContractViolation("es_extremal_sequence: s, n >= 2 required");
    std::vector<Rat> seq;
    seq.reserve(static_cast<std::size_t>(s - 1) * (n - 1));
    // block b (from the top) carries values (n-1-b)(s-1)+1 .. (n-1-b)(s-1)+(s-1)
    for (unsigned b = 0; b < n - 1; ++b) {
        long base = static_cast<long>(n - 2 - b) * (s - 1);
        for (unsigned i = 1; i <= s - 1; ++i) seq.emplace_back(base + i);
    }
    return seq;
}

namespace {

std::vector<std::size_t> longest_chain(const std::vector<Rat>& seq, bool increasing) {
    const std::size_t n = seq.size();
    std::vector<std::size_t> len(n, 1);
    std::vector<std::size_t> prev(n, n);
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            bool ok = increasing ? seq[j] < seq[i] : seq[j] > seq[i];
            if (ok && len[j] + 1 > len[i]) {
                len[i] = len[j] + 1;
                prev[i] = j;
            }
        }
        if (len[i] > len[best]) best = i;
    }
    std::vector<std::size_t> chain;
    if (n == 0) return chain;
    for (std::size_t at = best; at != n; at = prev[at]) {
        chain.push_back(at);
        if (prev[at] == n) break;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace

MonotoneWitness longest_monotone(const std::vector<Rat>& seq) {
    std::set<Rat> dedup(seq.begin(), seq.end());
    if (dedup.size() != seq.size())
        throw ContractViolation("longest_monotone: values must be distinct");
    MonotoneWitness w;
    w.inc = longest_chain(seq, true);
    w.dec = longest_chain(seq, false);
    w.inc_len = w.inc.size();
    w.dec_len = w.dec.size();
    // witnesses must be monotone; cheap to recheck
    for (std::size_t i = 0; i + 1 < w.inc.size(); ++i)
        if (!(seq[w.inc[i]] < seq[w.inc[i + 1]]))
            throw ContractViolation("longest_monotone: broken increasing witness");
    for (std::size_t i = 0; i + 1 < w.dec.size(); ++i)
        if (!(seq[w.dec[i]] > seq[w.dec[i + 1]]))
            throw ContractViolation("longest_monotone: broken decreasing witness");
    return w;
}

}  // namespace semialg
