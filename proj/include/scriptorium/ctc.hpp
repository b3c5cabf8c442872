#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scriptorium/tensor.hpp"

namespace scriptorium::ctc {

// Blank is always alphabet index 0; targets use indices in [1, A].
constexpr int kBlank = 0;

struct LabelSeq {
    std::vector<int> symbols;

    int length() const { return static_cast<int>(symbols.size()); }
};

struct CtcResult {
    double loss = 0.0;        // -ln p(target | logits), +inf when no alignment exists
    Tensor grad;              // d loss / d logits, [T, A+1]; zero when infeasible
    bool infeasible = false;
};

// Forward-backward in log space over the blank-extended label.
// logits: [T, A+1] unnormalized scores; softmax is applied internally.
CtcResult ctc_loss(const Tensor& logits, const LabelSeq& target);

// Minimum number of time-steps any alignment of `target` needs
// (length plus one extra step per adjacent repeat).
int min_alignment_steps(const LabelSeq& target);

// Best-path decoding: per-step argmax, collapse repeats, drop blanks.
std::vector<int> greedy_decode(const Tensor& logits);

struct MetricPair {
    double cer = 0.0;
    double wer = 0.0;
    int64_t edits_char = 0;
    int64_t edits_word = 0;
    int64_t ref_chars = 0;
    int64_t ref_words = 0;
};

// Levenshtein distance with unit insert/delete/substitute costs.
template <class Seq>
int64_t edit_distance(const Seq& a, const Seq& b) {
    const size_t la = a.size(), lb = b.size();
    std::vector<int64_t> prev(lb + 1), cur(lb + 1);
    for (size_t j = 0; j <= lb; ++j) prev[j] = static_cast<int64_t>(j);
    for (size_t i = 0; i < la; ++i) {
        cur[0] = static_cast<int64_t>(i) + 1;
        for (size_t j = 0; j < lb; ++j) {
            int64_t sub = prev[j] + (a[i] == b[j] ? 0 : 1);
            int64_t del = prev[j + 1] + 1;
            int64_t ins = cur[j] + 1;
            cur[j + 1] = std::min(sub, std::min(del, ins));
        }
        prev.swap(cur);
    }
    return prev[lb];
}

// Corpus-level (micro-averaged) CER/WER. Characters are unicode code points,
// words are produced by splitting on single spaces. Throws when the reference
// corpus is empty.
MetricPair cer_wer(const std::vector<std::string>& refs, const std::vector<std::string>& hyps);

}  // namespace scriptorium::ctc
