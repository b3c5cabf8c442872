#include "scriptorium/ctc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "scriptorium/utf8.hpp"

namespace scriptorium::ctc {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline double log_sum_exp(double a, double b) {
    if (a == kLogZero) return b;
    if (b == kLogZero) return a;
    return (a > b) ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

}  // namespace

int min_alignment_steps(const LabelSeq& target) {
    int steps = target.length();
    for (size_t i = 1; i < target.symbols.size(); ++i)
        if (target.symbols[i] == target.symbols[i - 1]) ++steps;
    return steps;
}

CtcResult ctc_loss(const Tensor& logits, const LabelSeq& target) {
    if (logits.ndim() != 2) throw std::invalid_argument("ctc_loss: logits must be [T, A+1]");
    const int T = logits.dim(0);
    const int C = logits.dim(1);  // A+1
    const int L = target.length();
    if (L < 1) throw std::invalid_argument("ctc_loss: empty target");
    for (int s : target.symbols)
        if (s < 1 || s >= C) throw std::invalid_argument("ctc_loss: target symbol out of range");

    CtcResult res;
    res.grad = Tensor::zeros({T, C});
    if (T < min_alignment_steps(target)) {
        res.loss = std::numeric_limits<double>::infinity();
        res.infeasible = true;
        return res;
    }

    // log-softmax per time-step
    std::vector<double> logp(static_cast<size_t>(T) * C);
    for (int t = 0; t < T; ++t) {
        double mx = logits.at2(t, 0);
        for (int c = 1; c < C; ++c) mx = std::max(mx, static_cast<double>(logits.at2(t, c)));
        double sum = 0.0;
        for (int c = 0; c < C; ++c) sum += std::exp(static_cast<double>(logits.at2(t, c)) - mx);
        double lse = mx + std::log(sum);
        for (int c = 0; c < C; ++c) logp[static_cast<size_t>(t) * C + c] = logits.at2(t, c) - lse;
    }

    // blank-extended label l' = [b, y1, b, y2, ..., yL, b]
    const int U = 2 * L + 1;
    std::vector<int> lp(U, kBlank);
    for (int i = 0; i < L; ++i) lp[2 * i + 1] = target.symbols[i];

    auto lpk = [&](size_t t, int c) { return logp[t * C + c]; };

    std::vector<double> alpha(static_cast<size_t>(T) * U, kLogZero);
    std::vector<double> beta(static_cast<size_t>(T) * U, kLogZero);

    alpha[0 * U + 0] = lpk(0, lp[0]);
    if (U > 1) alpha[0 * U + 1] = lpk(0, lp[1]);
    for (int t = 1; t < T; ++t) {
        for (int u = 0; u < U; ++u) {
            double a = alpha[(t - 1) * static_cast<size_t>(U) + u];
            if (u > 0) a = log_sum_exp(a, alpha[(t - 1) * static_cast<size_t>(U) + u - 1]);
            if (u > 1 && lp[u] != kBlank && lp[u] != lp[u - 2])
                a = log_sum_exp(a, alpha[(t - 1) * static_cast<size_t>(U) + u - 2]);
            alpha[t * static_cast<size_t>(U) + u] = (a == kLogZero) ? kLogZero : a + lpk(t, lp[u]);
        }
    }

    beta[(T - 1) * static_cast<size_t>(U) + (U - 1)] = 0.0;
    if (U > 1) beta[(T - 1) * static_cast<size_t>(U) + (U - 2)] = 0.0;
    for (int t = T - 2; t >= 0; --t) {
        for (int u = 0; u < U; ++u) {
            double b = beta[(t + 1) * static_cast<size_t>(U) + u] + lpk(t + 1, lp[u]);
            if (u + 1 < U)
                b = log_sum_exp(b, beta[(t + 1) * static_cast<size_t>(U) + u + 1] + lpk(t + 1, lp[u + 1]));
            if (u + 2 < U && lp[u] != kBlank && lp[u] != lp[u + 2])
                b = log_sum_exp(b, beta[(t + 1) * static_cast<size_t>(U) + u + 2] + lpk(t + 1, lp[u + 2]));
            beta[t * static_cast<size_t>(U) + u] = b;
        }
    }

    double log_pzx = log_sum_exp(alpha[(T - 1) * static_cast<size_t>(U) + U - 1],
                                 U > 1 ? alpha[(T - 1) * static_cast<size_t>(U) + U - 2] : kLogZero);
    if (log_pzx == kLogZero) {
        // No alignment carries probability mass; callers treat this like the
        // too-short case.
        res.loss = std::numeric_limits<double>::infinity();
        res.infeasible = true;
        return res;
    }
    res.loss = -log_pzx;

    // grad wrt logits: softmax(logits) - alignment posterior
    for (int t = 0; t < T; ++t) {
        std::vector<double> post(C, kLogZero);
        for (int u = 0; u < U; ++u) {
            double ab = alpha[t * static_cast<size_t>(U) + u] + beta[t * static_cast<size_t>(U) + u];
            post[lp[u]] = log_sum_exp(post[lp[u]], ab);
        }
        for (int c = 0; c < C; ++c) {
            double p = std::exp(logp[static_cast<size_t>(t) * C + c]);
            double q = (post[c] == kLogZero) ? 0.0 : std::exp(post[c] - log_pzx);
            res.grad.at2(t, c) = static_cast<float>(p - q);
        }
    }
    return res;
}

std::vector<int> greedy_decode(const Tensor& logits) {
    if (logits.ndim() != 2) throw std::invalid_argument("greedy_decode: logits must be [T, A+1]");
    const int T = logits.dim(0);
    const int C = logits.dim(1);
    std::vector<int> out;
    int prev = -1;
    for (int t = 0; t < T; ++t) {
        int best = 0;
        float bv = logits.at2(t, 0);
        for (int c = 1; c < C; ++c) {
            if (logits.at2(t, c) > bv) {
                bv = logits.at2(t, c);
                best = c;
            }
        }
        if (best != kBlank && best != prev) out.push_back(best);
        prev = best;
    }
    return out;
}

namespace {

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

MetricPair cer_wer(const std::vector<std::string>& refs, const std::vector<std::string>& hyps) {
    if (refs.size() != hyps.size())
        throw std::invalid_argument("cer_wer: refs and hyps must have equal length");
    MetricPair m;
    for (size_t i = 0; i < refs.size(); ++i) {
        auto rc = utf8_decode(refs[i]);
        auto hc = utf8_decode(hyps[i]);
        m.ref_chars += static_cast<int64_t>(rc.size());
        m.edits_char += edit_distance(rc, hc);
        auto rw = split_words(refs[i]);
        auto hw = split_words(hyps[i]);
        m.ref_words += static_cast<int64_t>(rw.size());
        m.edits_word += edit_distance(rw, hw);
    }
    if (m.ref_chars == 0) throw std::invalid_argument("cer_wer: empty reference corpus");
    m.cer = static_cast<double>(m.edits_char) / static_cast<double>(m.ref_chars);
    m.wer = m.ref_words > 0
                ? static_cast<double>(m.edits_word) / static_cast<double>(m.ref_words)
                : 0.0;
    return m;
}

}  // namespace scriptorium::ctc
