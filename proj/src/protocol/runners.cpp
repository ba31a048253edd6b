// Copyright 2026 The scot-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numbers>
#include <random>

#include "scot/errors.hpp"
#include "sim.hpp"

namespace scot::proto {

namespace {

using detail::Agent;
using detail::Sim;
using Kind = Placement::Kind;
using Target = Placement::Target;

std::string agent(const char* base, int i) { return base + std::to_string(i); }

Placement deliver_at(Kind k, int i = 0) { return {k, Target::Deliver, i}; }
Placement emit_at(Kind k, int i = 0) { return {k, Target::Emit, i}; }
Placement here(Kind k, int i = 0) { return {k, Target::At, i}; }

Bits xor_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) {
        throw InvariantError("xor of strings with different lengths");
    }
    Bits out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = a[k] ^ b[k];
    }
    return out;
}

template <class T>
const T& value_of(const Message& msg, const std::string& label) {
    for (const auto& p : msg.payload) {
        if (p.label == label) {
            return std::get<T>(p.value);
        }
    }
    throw InvariantError("message lacks payload '" + label + "'");
}

bool has_label(const Message& msg, const std::string& label) {
    for (const auto& p : msg.payload) {
        if (p.label == label) {
            return true;
        }
    }
    return false;
}

Bits random_bits(int n, qm::Rng& rng) {
    std::uniform_int_distribution<int> bit(0, 1);
    Bits out(n);
    for (auto& v : out) {
        v = bit(rng);
    }
    return out;
}

void check_bits(const Bits& s, int n, const std::string& what) {
    if (static_cast<int>(s.size()) != n) {
        throw InputError(what + " must have length n = " + std::to_string(n));
    }
    for (int v : s) {
        if (v != 0 && v != 1) {
            throw InputError(what + " must be a bit string");
        }
    }
}

void check_common(const ScotConfig& cfg, Mode expected, int b) {
    cfg.validate();
    if (cfg.mode != expected) {
        throw InputError("configuration mode is " + to_string(cfg.mode) + ", runner expects " +
                         to_string(expected));
    }
    if (b < 0 || b >= cfg.m()) {
        throw InputError("b must lie in I_m");
    }
}

void check_messages(const dqacm::Strings& x, int m, int n) {
    if (static_cast<int>(x.size()) != m) {
        throw InputError("Alice needs m input strings");
    }
    for (const auto& xi : x) {
        check_bits(xi, n, "x_i");
    }
}

qm::BasisFamily bb84() { return qm::planar_basis_family(2, {std::numbers::pi / 2.0}); }

int flip(int bit, double rate, qm::Rng& rng) {
    if (rate <= 0.0) {
        return bit;
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) < rate ? 1 - bit : bit;
}

// ---------------------------------------------------------------------------
// P_SR and P_QC

struct SrShared {
    int m = 0;
    int n = 0;
    int b = 0;
    bool with_qc = false;
    double flip_rate = 0.0;
    Bits r;
    Bits bases;
    dqacm::Strings x;
};

class SrAlice : public Agent {
  public:
    explicit SrAlice(const SrShared& sh) : Agent("A"), sh_(sh) {}
    void start(Sim& sim) override {
        sim.act(name(), "SR1", "encode r in BB84 states with bases s", {here(Kind::InG)});
        const auto fam = bb84();
        std::vector<qm::Vec> qubits;
        for (int j = 0; j < sh_.n; ++j) {
            qubits.push_back(fam.vec(sh_.bases[j], sh_.r[j]));
        }
        const int h = sim.registry().add(std::move(qubits));
        sim.send(name(), "B", "SR1", {{"state", qm_handle(h)}}, {deliver_at(Kind::InG)});
        for (int i = 0; i < sh_.m; ++i) {
            sim.send(name(), agent("A", i), "SR3", {{"s", sh_.bases}},
                     {deliver_at(Kind::PastOfQ, i)});
            if (sh_.with_qc) {
                sim.send(name(), agent("A", i), "QC2", {{"r", sh_.r}},
                         {deliver_at(Kind::PastOfQ, i)});
            }
        }
    }
    void receive(Sim& /*sim*/, const Message& /*msg*/) override {}

  private:
    static Value qm_handle(int h) { return QuantumHandle{h}; }
    const SrShared& sh_;
};

class SrBob : public Agent {
  public:
    explicit SrBob(const SrShared& sh) : Agent("B"), sh_(sh) {}
    void start(Sim& sim) override {
        sim.act(name(), "SR2", "input b = " + std::to_string(sh_.b), {here(Kind::InG)});
    }
    void receive(Sim& sim, const Message& msg) override {
        if (!has_label(msg, "state")) {
            return;
        }
        sim.send(name(), agent("B", sh_.b), "SR2", {{"state", value_of<QuantumHandle>(msg, "state")}},
                 {emit_at(Kind::InG), deliver_at(Kind::PastOfRegion, sh_.b)});
    }

  private:
    const SrShared& sh_;
};

class SrAliceI : public Agent {
  public:
    SrAliceI(const SrShared& sh, int i) : Agent(agent("A", i)), sh_(sh), i_(i) {}
    void start(Sim& sim) override {
        if (sh_.with_qc) {
            sim.act(name(), "QC3", "input x_" + std::to_string(i_),
                    {here(Kind::PastOfQ, i_)});
        }
    }
    void receive(Sim& sim, const Message& msg) override {
        if (has_label(msg, "s")) {
            s_ = value_of<Bits>(msg, "s");
        }
        if (has_label(msg, "r")) {
            r_ = value_of<Bits>(msg, "r");
        }
        if (done_ || s_.empty() || (sh_.with_qc && r_.empty())) {
            return;
        }
        done_ = true;
        std::vector<Payload> pay{{"s", s_}};
        if (sh_.with_qc) {
            const Bits t = xor_bits(sh_.x[i_], r_);
            sim.transcript().t[i_] = t;
            pay.push_back({"t", t});
        }
        sim.hand_over(name(), agent("B", i_), i_, sh_.with_qc ? "QC4" : "SR4", std::move(pay));
    }

  private:
    const SrShared& sh_;
    int i_;
    Bits s_;
    Bits r_;
    bool done_ = false;
};

class SrBobI : public Agent {
  public:
    SrBobI(const SrShared& sh, int i) : Agent(agent("B", i)), sh_(sh), i_(i) {}
    void start(Sim& /*sim*/) override {}
    void receive(Sim& sim, const Message& msg) override {
        if (has_label(msg, "state")) {
            handle_ = value_of<QuantumHandle>(msg, "state").id;
        }
        if (has_label(msg, "s")) {
            s_ = value_of<Bits>(msg, "s");
        }
        if (has_label(msg, "t")) {
            t_ = value_of<Bits>(msg, "t");
        }
        if (i_ != sh_.b) {
            return;
        }
        if (!measured_ && handle_ && !s_.empty()) {
            measured_ = true;
            sim.act(name(), "SR5", "measure in bases s", {here(Kind::InRegion, i_)}, i_);
            const auto qubits = sim.registry().take(*handle_);
            const auto fam = bb84();
            Bits out(sh_.n);
            for (int j = 0; j < sh_.n; ++j) {
                const auto meas = qm::ProjectiveMeasurement::from_basis(fam.basis(s_[j]), {0});
                const int o = qm::measure(qm::PureState(qubits[j], {2}), meas, sim.rng()()).outcome;
                out[j] = flip(o, sh_.flip_rate, sim.rng());
            }
            r_prime_ = out;
            sim.transcript().r_prime = out;
            if (!sh_.with_qc) {
                sim.transcript().outputs[i_] = out;
            }
        }
        if (sh_.with_qc && measured_ && !t_.empty() && !output_) {
            output_ = true;
            sim.act(name(), "QC5", "output x_b' = r' xor t_b", {here(Kind::InRegion, i_)}, i_);
            sim.transcript().outputs[i_] = xor_bits(r_prime_, t_);
        }
    }

  private:
    const SrShared& sh_;
    int i_;
    std::optional<int> handle_;
    Bits s_;
    Bits t_;
    Bits r_prime_;
    bool measured_ = false;
    bool output_ = false;
};

Transcript run_sr(const ScotConfig& cfg, SrShared sh, const RunOptions& opts) {
    Transcript tr;
    tr.mode = sh.with_qc ? Mode::PQC : Mode::PSR;
    tr.m = sh.m;
    tr.n = sh.n;
    tr.b = sh.b;
    tr.r = {sh.r};
    tr.bases = sh.bases;
    tr.x = sh.x;
    if (sh.with_qc) {
        tr.t.assign(sh.m, Bits{});
    }
    Sim sim(cfg, tr, opts.seed ^ 0x51u);
    sim.add(std::make_unique<SrAlice>(sh));
    sim.add(std::make_unique<SrBob>(sh));
    for (int i = 0; i < sh.m; ++i) {
        sim.add(std::make_unique<SrAliceI>(sh, i));
        sim.add(std::make_unique<SrBobI>(sh, i));
    }
    sim.run();
    if (!tr.outputs.contains(sh.b)) {
        throw SchedulingError("B_" + std::to_string(sh.b) + " never produced an output in R_b");
    }
    return tr;
}

// ---------------------------------------------------------------------------
// P_CC

struct CcShared {
    const ScotConfig* cfg = nullptr;
    int m = 0;
    int n = 0;
    int b = 0;
    int c = 0;
    double flip_rate = 0.0;
    dqacm::AliceInputs in;
    dqacm::Strings x;
};

class CcAlice : public Agent {
  public:
    explicit CcAlice(const CcShared& sh) : Agent("A"), sh_(sh) {}
    void start(Sim& sim) override {
        sim.act(name(), "1", "draw r_0..r_{m-1} and s; prepare |Psi_r^s>", {here(Kind::InG)});
        const int h = sim.registry().add(
            qm::product_factors(sh_.cfg->dqacm.family, sh_.in.r, sh_.in.s));
        sim.send(name(), "B", "1", {{"state", QuantumHandle{h}}},
                 {emit_at(Kind::InG), deliver_at(Kind::InG)});
        for (int i = 0; i < sh_.m; ++i) {
            sim.send(name(), agent("A", i), "2", {{"s", sh_.in.s}, {"r", sh_.in.r}},
                     {deliver_at(Kind::PastOfQ, i)});
        }
    }
    void receive(Sim& sim, const Message& msg) override {
        if (!has_label(msg, "b'")) {
            return;
        }
        const int bp = value_of<int>(msg, "b'");
        for (int i = 0; i < sh_.m; ++i) {
            sim.send(name(), agent("A", i), "6", {{"b'", bp}}, {deliver_at(Kind::PastOfQ, i)});
        }
    }

  private:
    const CcShared& sh_;
};

class CcBob : public Agent {
  public:
    explicit CcBob(const CcShared& sh) : Agent("B"), sh_(sh) {}
    void start(Sim& sim) override {
        sim.act(name(), "1", "draw c = " + std::to_string(sh_.c), {here(Kind::InG)});
    }
    void receive(Sim& sim, const Message& msg) override {
        if (!has_label(msg, "state")) {
            return;
        }
        const auto& dq = sh_.cfg->dqacm;
        sim.act(name(), "1", "measure every slot in D_c", {here(Kind::InG)});
        const auto slots = sim.registry().take(value_of<QuantumHandle>(msg, "state").id);
        const auto meas = qm::ProjectiveMeasurement::from_basis(dq.family.basis(sh_.c), {0});
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<int> shift(1, dq.l() - 1);
        dqacm::Strings d(sh_.m, Bits(sh_.n));
        for (int j = 0; j < sh_.n; ++j) {
            for (int p = 0; p < sh_.m; ++p) {
                const qm::PureState slot(slots[static_cast<std::size_t>(j) * sh_.m + p], {dq.l()});
                int o = qm::measure(slot, meas, sim.rng()()).outcome;
                if (sh_.flip_rate > 0.0 && u(sim.rng()) < sh_.flip_rate) {
                    o = (o + shift(sim.rng())) % dq.l();
                }
                d[p][j] = o;
            }
        }
        for (int i = 0; i < sh_.m; ++i) {
            sim.send(name(), agent("B", i), "3", {{"c", sh_.c}, {"d", d}},
                     {emit_at(Kind::InG), deliver_at(Kind::PastOfQ, i)});
        }
        sim.act(name(), "4", "input b = " + std::to_string(sh_.b), {here(Kind::InG)});
        const int bp = (sh_.b + sh_.c) % sh_.m;
        sim.transcript().b_prime = bp;
        sim.send(name(), "A", "4", {{"b'", bp}}, {emit_at(Kind::InG), deliver_at(Kind::InG)});
        for (int i = 0; i < sh_.m; ++i) {
            sim.send(name(), agent("B", i), "5", {{"b", sh_.b}}, {deliver_at(Kind::PastOfQ, i)});
        }
    }

  private:
    const CcShared& sh_;
};

class CcAliceI : public Agent {
  public:
    CcAliceI(const CcShared& sh, int i) : Agent(agent("A", i)), sh_(sh), i_(i) {}
    void start(Sim& sim) override {
        sim.act(name(), "7", "input x_" + std::to_string(i_), {here(Kind::PastOfQ, i_)});
    }
    void receive(Sim& sim, const Message& msg) override {
        if (has_label(msg, "s")) {
            s_ = value_of<dqacm::PermTuple>(msg, "s");
            r_ = value_of<dqacm::Strings>(msg, "r");
        }
        if (has_label(msg, "b'")) {
            bp_ = value_of<int>(msg, "b'");
        }
        if (done_ || s_.empty() || !bp_) {
            return;
        }
        done_ = true;
        const int k = ((*bp_ - i_) % sh_.m + sh_.m) % sh_.m;
        const Bits t = xor_bits(r_[k], sh_.x[i_]);
        sim.transcript().t[i_] = t;
        sim.hand_over(name(), agent("B", i_), i_, "7", {{"t", t}});
        sim.hand_over(name(), agent("B", i_), i_, "8", {{"s", s_}});
    }

  private:
    const CcShared& sh_;
    int i_;
    dqacm::PermTuple s_;
    dqacm::Strings r_;
    std::optional<int> bp_;
    bool done_ = false;
};

class CcBobI : public Agent {
  public:
    CcBobI(const CcShared& sh, int i) : Agent(agent("B", i)), sh_(sh), i_(i) {}
    void receive(Sim& sim, const Message& msg) override {
        if (has_label(msg, "c")) {
            c_ = value_of<int>(msg, "c");
            d_ = value_of<dqacm::Strings>(msg, "d");
        }
        if (has_label(msg, "b")) {
            b_ = value_of<int>(msg, "b");
        }
        if (has_label(msg, "t")) {
            t_ = value_of<Bits>(msg, "t");
        }
        if (has_label(msg, "s")) {
            s_ = value_of<dqacm::PermTuple>(msg, "s");
        }
        if (!decoded_ && c_ && !s_.empty()) {
            decoded_ = true;
            sim.act(name(), "9", "decode r_c from (c, d, s)", {here(Kind::InRegion, i_)}, i_);
            rc_ = dqacm::decode(sh_.cfg->dqacm, *c_, dqacm::BobRecord{*c_, d_}, s_);
            sim.transcript().decoded[i_] = rc_;
        }
        if (decoded_ && !output_ && b_ && *b_ == i_ && !t_.empty()) {
            output_ = true;
            sim.act(name(), "10", "output x_b = r_c xor t_b", {here(Kind::InRegion, i_)}, i_);
            sim.transcript().outputs[i_] = xor_bits(rc_, t_);
        }
    }

  private:
    const CcShared& sh_;
    int i_;
    std::optional<int> c_;
    std::optional<int> b_;
    dqacm::Strings d_;
    dqacm::PermTuple s_;
    Bits t_;
    Bits rc_;
    bool decoded_ = false;
    bool output_ = false;
};

} // namespace

Transcript run_psr(const ScotConfig& cfg, const Bits& r, int b, const RunOptions& opts) {
    check_common(cfg, Mode::PSR, b);
    check_bits(r, cfg.n(), "r");
    qm::Rng rng(opts.seed);
    SrShared sh;
    sh.m = cfg.m();
    sh.n = cfg.n();
    sh.b = b;
    sh.r = r;
    sh.bases = opts.force_bases ? *opts.force_bases : random_bits(cfg.n(), rng);
    check_bits(sh.bases, cfg.n(), "bases");
    sh.flip_rate = opts.flip_rate;
    return run_sr(cfg, std::move(sh), opts);
}

Transcript run_pqc(const ScotConfig& cfg, const dqacm::Strings& x, int b, const RunOptions& opts) {
    check_common(cfg, Mode::PQC, b);
    check_messages(x, cfg.m(), cfg.n());
    qm::Rng rng(opts.seed);
    SrShared sh;
    sh.m = cfg.m();
    sh.n = cfg.n();
    sh.b = b;
    sh.with_qc = true;
    sh.r = (opts.force_inputs && !opts.force_inputs->r.empty()) ? opts.force_inputs->r.front()
                                                                : random_bits(cfg.n(), rng);
    check_bits(sh.r, cfg.n(), "r");
    sh.bases = opts.force_bases ? *opts.force_bases : random_bits(cfg.n(), rng);
    check_bits(sh.bases, cfg.n(), "bases");
    sh.x = x;
    sh.flip_rate = opts.flip_rate;
    return run_sr(cfg, std::move(sh), opts);
}

Transcript run_pcc(const ScotConfig& cfg, const dqacm::Strings& x, int b, const RunOptions& opts) {
    check_common(cfg, Mode::PCC, b);
    check_messages(x, cfg.m(), cfg.n());
    if (cfg.dqacm.l() != 2) {
        throw InputError("P_CC pads bit strings, so the DQACM alphabet must be binary");
    }
    qm::Rng rng(opts.seed);
    CcShared sh;
    sh.cfg = &cfg;
    sh.m = cfg.m();
    sh.n = cfg.n();
    sh.b = b;
    sh.x = x;
    sh.flip_rate = opts.flip_rate;
    sh.in = opts.force_inputs ? *opts.force_inputs : dqacm::sample_inputs(cfg.dqacm, rng());
    if (static_cast<int>(sh.in.r.size()) != sh.m || static_cast<int>(sh.in.s.size()) != sh.n) {
        throw InputError("forced DQACM inputs have the wrong shape");
    }
    for (const auto& p : sh.in.s) {
        if (!dqacm::is_permutation(p, sh.m)) {
            throw InputError("forced s entries must be permutations");
        }
    }
    for (const auto& row : sh.in.r) {
        check_bits(row, sh.n, "r_i");
    }
    std::uniform_int_distribution<int> pick_c(0, sh.m - 1);
    const int drawn = pick_c(rng);
    sh.c = opts.force_c ? *opts.force_c : drawn;
    if (sh.c < 0 || sh.c >= sh.m) {
        throw InputError("c must lie in I_m");
    }

    Transcript tr;
    tr.mode = Mode::PCC;
    tr.m = sh.m;
    tr.n = sh.n;
    tr.b = b;
    tr.c = sh.c;
    tr.x = x;
    tr.r = sh.in.r;
    tr.s = sh.in.s;
    tr.t.assign(sh.m, Bits{});
    Sim sim(cfg, tr, rng());
    sim.add(std::make_unique<CcAlice>(sh));
    sim.add(std::make_unique<CcBob>(sh));
    for (int i = 0; i < sh.m; ++i) {
        sim.add(std::make_unique<CcAliceI>(sh, i));
        sim.add(std::make_unique<CcBobI>(sh, i));
    }
    sim.run();
    if (!tr.outputs.contains(b)) {
        throw SchedulingError("B_" + std::to_string(b) + " never produced an output in R_b");
    }
    return tr;
}

Transcript run(const ScotConfig& cfg, const dqacm::Strings& x, int b, const RunOptions& opts) {
    switch (cfg.mode) {
    case Mode::PSR:
        if (x.empty()) {
            throw InputError("P_SR needs r as the first input string");
        }
        return run_psr(cfg, x.front(), b, opts);
    case Mode::PQC:
        return run_pqc(cfg, x, b, opts);
    case Mode::PCC:
        return run_pcc(cfg, x, b, opts);
    }
    throw InputError("unknown mode");
}

} // namespace scot::proto
