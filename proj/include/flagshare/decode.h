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

#ifndef FLAGSHARE_DECODE_H
#define FLAGSHARE_DECODE_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "flagshare/scheme.h"

namespace flagshare {

enum class Procedure { Alg1, Alg3, Alg4, Alg4Complete, Detect };

Procedure parse_procedure(std::string_view s);
const char *procedure_name(Procedure p);

/// Data-register Pauli as two words (n <= 64).
struct PauliMask {
    uint64_t x = 0;
    uint64_t z = 0;

    bool is_identity() const {
        return (x | z) == 0;
    }
    PauliMask &operator^=(const PauliMask &o) {
        x ^= o.x;
        z ^= o.z;
        return *this;
    }
    bool operator==(const PauliMask &) const = default;
};

PauliMask to_mask(const PauliOperator &p);
PauliOperator to_pauli(const PauliMask &m, size_t n);

/// Which part of the data error a flag-table correction addresses.
enum class LookupPart : uint8_t { X, Z, Both };

struct FlagKey {
    uint32_t context;
    uint64_t pattern;
    uint64_t syndrome;

    bool operator==(const FlagKey &) const = default;
};

struct FlagKeyHash {
    size_t operator()(const FlagKey &k) const {
        uint64_t h = k.context * 0x9e3779b97f4a7c15ULL;
        h ^= k.pattern + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
        h ^= k.syndrome + 0x94d049bb133111ebULL + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

/// Contexts used by the CSS procedures for the X-side and Z-side flags; the
/// gadget index is the context for alg1.
inline constexpr uint32_t kContextXSide = 1000;
inline constexpr uint32_t kContextZSide = 1001;

/// LOOKUP(0) plus LOOKUP(f) for one scheme and procedure.
class DecoderTables {
   public:
    DecoderTables() = default;
    explicit DecoderTables(CodePtr code);

    const CssCode &code() const {
        return *code_;
    }

    /// Minimum-weight correction (weight <= 2, else identity) of the error
    /// type revealed by generators of type `measured`. `gen_bits` is indexed
    /// by generator position; bits of the other type are ignored.
    PauliMask lookup0(uint64_t gen_bits, PauliType measured) const;
    /// Both parts.
    PauliMask lookup0(uint64_t gen_bits) const;
    /// True iff LOOKUP(0) has an entry (weight <= 2) for this syndrome.
    bool lookup0_defined(uint64_t gen_bits, PauliType measured) const;

    std::optional<PauliMask> lookup_flag(const FlagKey &k) const;
    void set_flag(const FlagKey &k, PauliMask correction);
    const std::unordered_map<FlagKey, PauliMask, FlagKeyHash> &flag_entries() const {
        return flag_;
    }

    /// Packs the bits of `gen_bits` that belong to type-t generators, in order.
    uint64_t compact(uint64_t gen_bits, PauliType t) const;

   private:
    CodePtr code_;
    /// Indexed by compact syndrome of Z-type generators: X correction.
    std::vector<uint64_t> x_fix_;
    std::vector<uint8_t> x_defined_;
    /// Indexed by compact syndrome of X-type generators: Z correction.
    std::vector<uint64_t> z_fix_;
    std::vector<uint8_t> z_defined_;
    std::unordered_map<FlagKey, PauliMask, FlagKeyHash> flag_;
};

/// Executes circuits on behalf of a decoder; the implementation owns the
/// data frame and the noise.
class RoundDriver {
   public:
    virtual ~RoundDriver() = default;
    /// Runs gadget i and returns its outcomes (bit m = m-th measurement).
    virtual uint64_t run_gadget(size_t i) = 0;
    /// Runs a follow-up and returns the generator-indexed outcome bits.
    virtual uint64_t run_followup(const Followup &f) = 0;
    /// Applies a correction to the data immediately.
    virtual void apply_correction(const PauliMask &c) = 0;
    /// Called just before a flag-table lookup.
    virtual void note_flag_lookup(const FlagKey &, LookupPart) {
    }
};

enum class DecodeAction { NoOp, Correction, Discard };

enum FollowupBits : uint8_t { kFollowNone = 0, kFollowX = 1, kFollowZ = 2, kFollowComplete = 4 };

struct DecodeOutcome {
    DecodeAction action = DecodeAction::NoOp;
    PauliMask correction;
    /// Bitwise OR of FollowupBits.
    uint8_t followups = kFollowNone;
    bool lookup_miss = false;
    /// Branches taken, e.g. "g3:flag", "X:syndrome".
    std::vector<std::string> trace;
    std::vector<uint64_t> outcomes;

    std::string to_json() const;
};

struct DecoderConfig {
    Procedure procedure = Procedure::Alg1;
    /// 0 treats the X side first, 1 the Z side first.
    int cycle_parity = 0;
};

/// Runs one extraction round under the configured procedure.
DecodeOutcome decode_round(const Scheme &scheme, const DecoderTables &tables, const DecoderConfig &config,
                           RoundDriver &driver);

DecodeOutcome decode_alg1(const Scheme &scheme, const DecoderTables &tables, RoundDriver &driver);
DecodeOutcome decode_alg3(const Scheme &scheme, const DecoderTables &tables, RoundDriver &driver, int cycle_parity = 0);
DecodeOutcome decode_alg4(const Scheme &scheme, const DecoderTables &tables, RoundDriver &driver,
                          bool complete_variant, int cycle_parity = 0);
DecodeOutcome decode_detect(const Scheme &scheme, RoundDriver &driver);

/// True iff the procedure can run on the scheme.
bool procedure_supported(const Scheme &scheme, Procedure p);
/// The procedure actually executed (the CSS procedures fall back to
/// alg1 on schemes whose gadgets mix X and Z generators).
Procedure effective_procedure(const Scheme &scheme, Procedure p);

}  // namespace flagshare

#endif
