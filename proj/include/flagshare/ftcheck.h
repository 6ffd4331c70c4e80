// Copyright 2026 The Flagshare Authors
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

#ifndef FLAGSHARE_FTCHECK_H
#define FLAGSHARE_FTCHECK_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flagshare/decode.h"
#include "flagshare/faults.h"
#include "flagshare/rng.h"
#include "flagshare/scheme.h"

namespace flagshare {

/// Noiseless execution of a scheme with at most one injected fault.
class FaultDriver : public RoundDriver {
   public:
    struct Lookup {
        FlagKey key;
        LookupPart part;
        PauliMask frame;
    };

    FaultDriver(const Scheme &scheme, PauliMask input = {});
    /// Injects `fault` the first time gadget `gadget` runs.
    void inject(size_t gadget, Injection fault);

    uint64_t run_gadget(size_t i) override;
    uint64_t run_followup(const Followup &f) override;
    void apply_correction(const PauliMask &c) override;
    void note_flag_lookup(const FlagKey &key, LookupPart part) override;

    const PauliMask &frame() const {
        return frame_;
    }
    const std::vector<Lookup> &lookups() const {
        return lookups_;
    }

   private:
    const Scheme &scheme_;
    PauliMask frame_;
    std::optional<size_t> target_;
    Injection fault_{};
    std::vector<Lookup> lookups_;
};

/// Number of distinct nontrivial same-type residual classes (modulo the
/// stabilizer group) among single faults that raise the flag.
/// Throws std::invalid_argument unless the circuit has exactly one flag qubit.
size_t b_count(const Circuit &flagged, const CssCode &code);

/// Sum of b_count over standard flagged circuits of the group, compared with
/// 2^(number of opposite-type generators). Throws on mixed types.
bool check_budget(const std::vector<size_t> &group, const CssCode &code, size_t *total = nullptr,
                  size_t *budget = nullptr);

struct FaultTableRow {
    size_t fault_id;
    size_t gadget;
    FaultEvent fault;
    std::string location;
    std::string effect;
    PauliOperator residual;
    /// Syndrome-ancilla outcomes in measurement order.
    std::string m;
    /// Flag outcomes in measurement order.
    std::string f;
    /// Noiseless follow-up syndrome of the residual, one bit per generator.
    std::string m_prime;
    bool flag_raised;
};

/// Every single fault of one gadget run on a clean codeword.
std::vector<FaultTableRow> fault_table(const Scheme &scheme, size_t gadget);
std::string fault_table_csv(const std::vector<FaultTableRow> &rows);
std::string fault_table_json(const std::vector<FaultTableRow> &rows);

struct Collision {
    FlagKey key;
    PauliOperator first;
    PauliOperator second;
};

/// LOOKUP(0) plus LOOKUP(f) learned from every single gadget fault and every
/// weight-1 input error. Keys whose observed residuals fall in more than one
/// coset are reported in `collisions`; the most frequent coset wins.
DecoderTables learn_tables(const Scheme &scheme, Procedure procedure, std::vector<Collision> *collisions = nullptr);

struct BadLocation {
    size_t gadget;
    FaultEvent fault;
    std::string location;
    std::string effect;
    PauliOperator final_residual;
    std::string trace;
};

struct Certificate {
    std::string scheme;
    Procedure procedure = Procedure::Alg1;
    bool pass = false;
    size_t faults_checked = 0;
    std::vector<BadLocation> bad_locations;
    std::vector<size_t> b_counts;
    bool unique = true;
    std::vector<Collision> collisions;

    std::string to_json() const;
};

/// Exhaustive single-fault certification of one round of the scheme under the
/// procedure, followed by an ideal round. Detection fails on an accepted
/// logical residual; correction fails on any residual that the ideal round
/// leaves logical or uncorrected.
Certificate certify(const Scheme &scheme, Procedure procedure);
Certificate certify(const Scheme &scheme, Procedure procedure, const DecoderTables &tables,
                    const std::vector<Collision> &collisions);

/// Ideal-round verdict used by certification and Monte Carlo: applies LOOKUP(0)
/// to the exact syndrome and classifies. Returns true on logical failure.
bool ideal_round_fails(const DecoderTables &tables, PauliMask frame);

struct SearchResult {
    bool success = false;
    size_t iterations = 0;
    GroupSpec spec;
    Circuit circuit;
    std::vector<Collision> collisions;
    bool budget_ok = true;
};

/// Flag-raised uniqueness test of one shared-flag circuit: distinct
/// same-type residual classes must have distinct opposite-type syndromes.
std::vector<Collision> flag_collisions(const Circuit &c, const CssCode &code);

/// Randomized search over per-stabilizer CNOT orders, starting from support
/// order, until the shared-flag circuit has no flag collisions.
SearchResult algorithm2_search(const CssCode &code, const std::vector<size_t> &group, Rng &rng, size_t max_iters);

/// All same-type generators of the code behind one shared flag.
Circuit ed_parallel_all(const CssCode &code, PauliType type);
/// Detection-mode certification of a single circuit: every undetected single
/// fault must leave a non-logical residual.
bool certify_detection_circuit(const Circuit &c, const CssCode &code, std::vector<FaultEvent> *bad = nullptr);

/// Flag-raised rows of the [[9,1,3]] Part (B) gadget produced by single X
/// faults on syndrome ancillas: (residual, m7 m8 f1, m'_{1..6}).
struct GoldenRow {
    std::string residual;
    std::string bits;
    std::string m_prime;

    auto operator<=>(const GoldenRow &) const = default;
};
std::vector<GoldenRow> shor_flag_raised_rows(const Scheme &parallel_913);

/// One row per (Pauli in {X, Z}, CNOT, qubit of that CNOT): the gadget run
/// with the Pauli inserted just before the CNOT. `residual` is "None" for the
/// identity, `bits` holds every outcome in measurement order, `m_prime` is empty.
std::vector<GoldenRow> pre_cnot_rows(const Gadget &gadget, size_t n);

}  // namespace flagshare

#endif
