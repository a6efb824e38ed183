// Copyright 2026 The ftcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftcap/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "ftcap/errors.hpp"

namespace ftcap {
namespace {

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max() / 4;

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Rank over F2 of the symplectic vectors (x | z << k).
int symplectic_rank(const std::vector<PauliString>& ops, int k) {
    std::vector<std::uint64_t> rows;
    for (const auto& p : ops) rows.push_back(p.x() | (p.z() << k));
    int rank = 0;
    for (int bit = 0; bit < 2 * k && rank < static_cast<int>(rows.size()); ++bit) {
        const std::uint64_t m = std::uint64_t{1} << bit;
        auto it = std::find_if(rows.begin() + rank, rows.end(), [m](std::uint64_t r) { return r & m; });
        if (it == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, it);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != rank && (rows[i] & m)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

PauliString hermitian(int n, std::uint64_t x, std::uint64_t z) {
    return PauliString(n, x, z, std::popcount(x & z));
}

const SyndromeTable& table_for(const StabilizerCode& code) {
    if (&code == &steane_code()) return steane_table();
    thread_local std::vector<std::pair<std::vector<PauliString>, SyndromeTable>> cache;
    for (const auto& [gens, table] : cache)
        if (gens == code.generators) return table;
    cache.emplace_back(code.generators, SyndromeTable(code));
    return cache.back().second;
}

}  // namespace

void StabilizerCode::validate() const {
    if (k < 1 || k > 10) throw ValidationError("StabilizerCode: k outside [1, 10]");
    if (static_cast<int>(generators.size()) != k - 1)
        throw ValidationError("StabilizerCode: expected k - 1 generators");
    auto sized = [this](const PauliString& p) { return p.size() == k; };
    if (!std::all_of(generators.begin(), generators.end(), sized) || !sized(logical_x) || !sized(logical_z))
        throw ValidationError("StabilizerCode: operator size differs from k");
    for (const auto& g : generators) {
        if (g.phase() % 2 != 0) throw ValidationError("StabilizerCode: non-Hermitian generator");
        for (const auto& h : generators)
            if (!g.commutes_with(h)) throw ValidationError("StabilizerCode: generators do not commute");
        if (!g.commutes_with(logical_x) || !g.commutes_with(logical_z))
            throw ValidationError("StabilizerCode: logical operator outside the normaliser");
    }
    if (symplectic_rank(generators, k) != k - 1) throw ValidationError("StabilizerCode: dependent generators");
    if (logical_x.commutes_with(logical_z)) throw ValidationError("StabilizerCode: logical X and Z commute");
    auto all = generators;
    all.push_back(logical_x);
    all.push_back(logical_z);
    if (symplectic_rank(all, k) != k + 1) throw ValidationError("StabilizerCode: logical operator in the stabilizer");
}

const StabilizerCode& steane_code() {
    static const StabilizerCode code = [] {
        constexpr std::uint64_t rows[] = {0b1111000, 0b1100110, 0b1010101};  // bit q = qubit q
        StabilizerCode c;
        c.k = 7;
        for (auto r : rows) c.generators.emplace_back(7, r, 0);
        for (auto r : rows) c.generators.emplace_back(7, 0, r);
        c.logical_x = PauliString(7, 0x7f, 0);
        c.logical_z = PauliString(7, 0, 0x7f);
        c.validate();
        return c;
    }();
    return code;
}

std::uint32_t syndrome(const StabilizerCode& code, const PauliString& e) {
    if (e.size() != code.k) throw ArgumentError("syndrome: operator size differs from the code length");
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        if (!e.commutes_with(code.generators[i])) s |= std::uint32_t{1} << i;
    return s;
}

std::vector<int> syndrome_bits(const StabilizerCode& code, const PauliString& e) {
    const std::uint32_t s = syndrome(code, e);
    std::vector<int> bits(code.generators.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (s >> i) & 1;
    return bits;
}

SyndromeTable::SyndromeTable(const StabilizerCode& code) {
    const int k = code.k;
    const std::size_t classes = std::size_t{1} << code.generators.size();
    table_.assign(classes, PauliString());
    std::vector<bool> seen(classes, false);
    std::size_t filled = 0;
    const std::uint64_t total = std::uint64_t{1} << (2 * k);
    // Base-4 digit of qubit q (qubit 0 most significant): 0 I, 1 X, 2 Y, 3 Z.
    // Increasing t is lexicographic order of the label strings.
    for (int w = 0; w <= k && filled < classes; ++w) {
        for (std::uint64_t t = 0; t < total && filled < classes; ++t) {
            std::uint64_t x = 0, z = 0;
            int weight = 0;
            for (int q = 0; q < k; ++q) {
                const unsigned d = (t >> (2 * (k - 1 - q))) & 3;
                if (d == 0) continue;
                ++weight;
                if (d == 1 || d == 2) x |= std::uint64_t{1} << q;
                if (d == 2 || d == 3) z |= std::uint64_t{1} << q;
            }
            if (weight != w) continue;
            PauliString e = hermitian(k, x, z);
            const std::uint32_t s = syndrome(code, e);
            if (seen[s]) continue;
            seen[s] = true;
            table_[s] = e;
            ++filled;
        }
    }
}

const SyndromeTable& steane_table() {
    static const SyndromeTable table(steane_code());
    return table;
}

DecodeResult ideal_decode(const StabilizerCode& code, const PauliString& e) {
    DecodeResult r;
    r.syndrome = syndrome(code, e);
    const PauliString logical = e * table_for(code).correction(r.syndrome);
    const bool has_x = !logical.commutes_with(code.logical_z);
    const bool has_z = !logical.commutes_with(code.logical_x);
    r.logical = has_x ? (has_z ? 'Y' : 'X') : (has_z ? 'Z' : 'I');
    return r;
}

int stabilizer_reduced_weight(const StabilizerCode& code, const PauliString& e) {
    if (e.size() != code.k) throw ArgumentError("stabilizer_reduced_weight: size mismatch");
    const std::size_t m = code.generators.size();
    int best = e.weight();
    for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << m); ++subset) {
        std::uint64_t x = e.x(), z = e.z();
        for (std::size_t i = 0; i < m; ++i) {
            if (!((subset >> i) & 1)) continue;
            x ^= code.generators[i].x();
            z ^= code.generators[i].z();
        }
        best = std::min(best, std::popcount(x | z));
    }
    return best;
}

int fault_sites(Op op) { return op == Op::cnot ? 2 : 1; }

bool faults_before(Op op) { return op == Op::measure || op == Op::discard; }

std::string to_string(Op op) {
    switch (op) {
        case Op::id: return "I";
        case Op::x: return "X";
        case Op::y: return "Y";
        case Op::z: return "Z";
        case Op::h: return "H";
        case Op::cnot: return "CNOT";
        case Op::prep: return "PREP";
        case Op::measure: return "MEASURE";
        case Op::discard: return "DISCARD";
    }
    return "?";
}

CliffordCircuit& CliffordCircuit::add(Op op, int q0, int q1) {
    if (qubits_ < 1 || qubits_ > 64) throw ArgumentError("CliffordCircuit: register size outside [1, 64]");
    auto in_range = [this](int q) { return q >= 0 && q < qubits_; };
    if (!in_range(q0)) throw ArgumentError("CliffordCircuit: qubit index out of range");
    if (op == Op::cnot) {
        if (!in_range(q1) || q1 == q0) throw ArgumentError("CliffordCircuit: bad CNOT target");
        support_ |= std::uint64_t{1} << q1;
    } else {
        q1 = -1;
    }
    support_ |= std::uint64_t{1} << q0;
    gates_.push_back({op, q0, q1});
    sites_ += fault_sites(op);
    return *this;
}

CliffordCircuit& CliffordCircuit::append(const CliffordCircuit& other) {
    if (other.qubits_ > qubits_) throw ArgumentError("CliffordCircuit::append: register too small");
    for (const auto& g : other.gates_) add(g.op, g.q0, g.q1);
    return *this;
}

FaultStream::FaultStream(double p, std::uint64_t seed) : p_(p), log_q_(std::log1p(-p)), rng_(seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("FaultStream: p outside [0, 1]");
    countdown_ = gap();
}

std::int64_t FaultStream::gap() {
    if (p_ <= 0.0) return kNever;
    if (p_ >= 1.0) return 0;
    const double u = static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double g = std::floor(std::log(u) / log_q_);
    return g >= static_cast<double>(kNever) ? kNever : static_cast<std::int64_t>(g);
}

char FaultStream::label() {
    static constexpr char kLabels[] = {'X', 'Y', 'Z'};
    return kLabels[((rng_() >> 32) * 3) >> 32];
}

void FaultStream::draw(std::int64_t sites, std::vector<SiteFault>& out) {
    while (countdown_ < sites) {
        out.push_back({countdown_, label()});
        countdown_ += 1 + gap();
    }
    if (countdown_ < kNever) countdown_ -= sites;
}

void SingleFault::draw(std::int64_t sites, std::vector<SiteFault>& out) {
    if (site_ >= consumed_ && site_ < consumed_ + sites) out.push_back({site_ - consumed_, label_});
    consumed_ += sites;
}

void PatternFaults::draw(std::int64_t sites, std::vector<SiteFault>& out) {
    for (auto it = pattern_.faults.lower_bound(consumed_); it != pattern_.faults.end() && it->first < consumed_ + sites;
         ++it)
        out.push_back({it->first - consumed_, it->second});
    consumed_ += sites;
}

FaultPattern sample_fault_pattern(const CliffordCircuit& circuit, double p, std::uint64_t seed) {
    FaultStream stream(p, seed);
    std::vector<SiteFault> faults;
    stream.draw(circuit.location_count(), faults);
    FaultPattern pattern;
    pattern.total_locations = circuit.location_count();
    for (const auto& f : faults) pattern.faults.emplace(f.site, f.label);
    return pattern;
}

void Frame::apply(int q, char label) {
    const std::uint64_t b = std::uint64_t{1} << q;
    switch (label) {
        case 'X': x ^= b; break;
        case 'Y': x ^= b; z ^= b; break;
        case 'Z': z ^= b; break;
        case 'I': break;
        default: throw ArgumentError(std::string("Frame::apply: bad label ") + label);
    }
}

char Frame::label(int q) const {
    const bool xb = (x >> q) & 1, zb = (z >> q) & 1;
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

PauliString Frame::restrict(int first, int count) const {
    const std::uint64_t m = low_mask(count);
    return hermitian(count, (x >> first) & m, (z >> first) & m);
}

std::uint64_t propagate(const CliffordCircuit& circuit, Frame& frame, const std::vector<SiteFault>& faults) {
    std::uint64_t flips = 0;
    std::size_t next = 0;
    std::int64_t base = 0;
    for (const Gate& g : circuit.gates()) {
        const int sites = fault_sites(g.op);
        auto inject = [&] {
            for (; next < faults.size() && faults[next].site < base + sites; ++next)
                frame.apply(faults[next].site == base ? g.q0 : g.q1, faults[next].label);
        };
        if (faults_before(g.op)) inject();
        const std::uint64_t b0 = std::uint64_t{1} << g.q0;
        switch (g.op) {
            case Op::id:
            case Op::x:
            case Op::y:
            case Op::z: break;
            case Op::h: {
                const std::uint64_t d = (frame.x ^ frame.z) & b0;
                frame.x ^= d;
                frame.z ^= d;
                break;
            }
            case Op::cnot: {
                const std::uint64_t b1 = std::uint64_t{1} << g.q1;
                if (frame.x & b0) frame.x ^= b1;
                if (frame.z & b1) frame.z ^= b0;
                break;
            }
            case Op::measure:
                if (frame.x & b0) flips |= b0;
                else flips &= ~b0;
                [[fallthrough]];
            case Op::prep:
            case Op::discard:
                frame.x &= ~b0;
                frame.z &= ~b0;
                break;
        }
        if (!faults_before(g.op)) inject();
        base += sites;
    }
    return flips;
}

std::uint64_t run_segment(const CliffordCircuit& circuit, Frame& frame, FaultSource& source,
                          std::vector<SiteFault>& scratch) {
    scratch.clear();
    source.draw(circuit.location_count(), scratch);
    if (scratch.empty() && ((frame.x | frame.z) & circuit.support()) == 0) return 0;
    return propagate(circuit, frame, scratch);
}

}  // namespace ftcap
