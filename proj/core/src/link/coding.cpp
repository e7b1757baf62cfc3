// SPDX-License-Identifier: Apache-2.0
//
// ristwin: computational twin of a 2-bit reconfigurable intelligent surface
// and its OFDM link.

#include "ristwin/link/coding.hpp"

#include <bit>
#include <limits>

#include "ristwin/errors.hpp"

namespace ris::link {

namespace {

struct GeneratorSet {
    int outputs;
    int constraint_length;
    std::vector<unsigned> octal;
};

const std::vector<GeneratorSet>& generator_table() {
    static const std::vector<GeneratorSet> table{
        {2, 3, {05, 07}},
        {2, 5, {023, 035}},
        {2, 7, {0133, 0171}},
        {2, 9, {0561, 0753}},
        {3, 3, {05, 07, 07}},
        {3, 7, {0133, 0171, 0165}},
    };
    return table;
}

}  // namespace

void CoderSpec::validate() const {
    if (kind == Kind::None) return;
    for (const auto& g : generator_table()) {
        if (g.outputs == outputs && g.constraint_length == constraint_length) return;
    }
    throw ConfigError("unsupported convolutional code: rate 1/" + std::to_string(outputs) + ", K=" +
                      std::to_string(constraint_length) +
                      " (supported: 1/2 with K=3,5,7,9; 1/3 with K=3,7)");
}

std::vector<unsigned> CoderSpec::generators() const {
    if (kind == Kind::None) return {};
    validate();
    for (const auto& g : generator_table()) {
        if (g.outputs == outputs && g.constraint_length == constraint_length) return g.octal;
    }
    return {};
}

std::string CoderSpec::describe() const {
    if (kind == Kind::None) return "none";
    return "convolutional(1/" + std::to_string(outputs) + ",K=" + std::to_string(constraint_length) + ")";
}

std::size_t encoded_length(std::size_t info_bits, const CoderSpec& spec) {
    if (spec.kind == CoderSpec::Kind::None) return info_bits;
    return static_cast<std::size_t>(spec.outputs) * (info_bits + static_cast<std::size_t>(spec.constraint_length) - 1);
}

Bits encode(std::span<const std::uint8_t> bits, const CoderSpec& spec) {
    if (bits.empty()) throw DomainError("encode: empty input");
    spec.validate();
    if (spec.kind == CoderSpec::Kind::None) return Bits(bits.begin(), bits.end());

    const auto gens = spec.generators();
    const int k = spec.constraint_length;
    Bits out;
    out.reserve(encoded_length(bits.size(), spec));
    unsigned state = 0;  // previous K-1 inputs, newest at bit K-2
    auto push = [&](unsigned b) {
        const unsigned reg = (b << (k - 1)) | state;
        for (unsigned g : gens) out.push_back(static_cast<std::uint8_t>(std::popcount(reg & g) & 1));
        state = reg >> 1;
    };
    for (auto b : bits) push(b & 1u);
    for (int i = 0; i < k - 1; ++i) push(0);
    return out;
}

Bits viterbi_decode(std::span<const float> soft, const CoderSpec& spec) {
    spec.validate();
    if (spec.kind == CoderSpec::Kind::None) {
        Bits out(soft.size());
        for (std::size_t i = 0; i < soft.size(); ++i) out[i] = soft[i] < 0.0f ? 1 : 0;
        return out;
    }
    const auto gens = spec.generators();
    const int k = spec.constraint_length;
    const std::size_t n = static_cast<std::size_t>(spec.outputs);
    const std::size_t tail = static_cast<std::size_t>(k - 1);
    if (soft.size() % n != 0 || soft.size() / n <= tail) {
        throw DomainError("viterbi_decode: " + std::to_string(soft.size()) +
                          " coded values do not form a terminated codeword");
    }
    const std::size_t steps = soft.size() / n;
    const unsigned num_states = 1u << (k - 1);
    const unsigned state_mask = num_states - 1;

    // Branch outputs for every (state, input) pair.
    std::vector<unsigned> branch_bits(num_states * 2);
    for (unsigned s = 0; s < num_states; ++s) {
        for (unsigned b = 0; b < 2; ++b) {
            const unsigned reg = (b << (k - 1)) | s;
            unsigned word = 0;
            for (std::size_t j = 0; j < n; ++j) word |= (std::popcount(reg & gens[j]) & 1u) << j;
            branch_bits[s * 2 + b] = word;
        }
    }

    constexpr double kUnreached = -std::numeric_limits<double>::infinity();
    std::vector<double> metric(num_states, kUnreached);
    std::vector<double> next(num_states);
    metric[0] = 0.0;
    // decision[t * num_states + s] = low bit of the chosen predecessor
    std::vector<std::uint8_t> decision(steps * num_states, 0);
    std::vector<double> branch_gain(std::size_t{1} << n);

    for (std::size_t t = 0; t < steps; ++t) {
        const float* y = soft.data() + t * n;
        for (unsigned word = 0; word < branch_gain.size(); ++word) {
            double g = 0.0;
            for (std::size_t j = 0; j < n; ++j) g += ((word >> j) & 1u) ? -y[j] : y[j];
            branch_gain[word] = g;
        }
        for (unsigned ns = 0; ns < num_states; ++ns) {
            const unsigned b = ns >> (k - 2);
            const unsigned p0 = (ns << 1) & state_mask;
            const unsigned p1 = p0 | 1u;
            const double m0 = metric[p0] + branch_gain[branch_bits[p0 * 2 + b]];
            const double m1 = metric[p1] + branch_gain[branch_bits[p1 * 2 + b]];
            if (m1 > m0) {
                next[ns] = m1;
                decision[t * num_states + ns] = 1;
            } else {
                next[ns] = m0;
            }
        }
        metric.swap(next);
    }

    // Zero-tail termination: trace back from state 0.
    Bits decoded(steps);
    unsigned s = 0;
    for (std::size_t t = steps; t-- > 0;) {
        decoded[t] = static_cast<std::uint8_t>(s >> (k - 2));
        s = ((s << 1) & state_mask) | decision[t * num_states + s];
    }
    decoded.resize(steps - tail);
    return decoded;
}

Bits viterbi_decode_hard(std::span<const std::uint8_t> coded, const CoderSpec& spec) {
    std::vector<float> soft(coded.size());
    for (std::size_t i = 0; i < coded.size(); ++i) soft[i] = (coded[i] & 1u) ? -1.0f : 1.0f;
    return viterbi_decode(soft, spec);
}

}  // namespace ris::link
