#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gatwb/model.hpp"

namespace gatwb {

// Per-sort-instance equivalence relations together with cross-fiber
// relations between fibers over related boundary tuples.
class Congruence {
public:
    Congruence() = default;
    explicit Congruence(const FiniteModel& base);

    const FiniteModel& base() const { return *base_; }

    void add_pair(const InstanceKey& k1, const Elem& e1, const InstanceKey& k2, const Elem& e2);
    bool related(const InstanceKey& k1, const Elem& e1, const InstanceKey& k2, const Elem& e2) const;

    // Boundary tuples of a sort are related when componentwise related.
    bool keys_related(const InstanceKey& k1, const InstanceKey& k2) const;

    // All pairs, in deterministic order.
    std::vector<std::tuple<InstanceKey, Elem, InstanceKey, Elem>> pairs() const;

    // The sorts whose relations are represented (always every sort of the
    // base signature; diagonal pairs are implicit and always related).
    bool is_diagonal() const;

    bool subset_of(const Congruence& other) const;
    bool equals(const Congruence& other) const;

private:
    const FiniteModel* base_ = nullptr;
    // stored with k1 <= k2 normalized ordering plus symmetric lookup
    std::set<std::tuple<InstanceKey, Elem, InstanceKey, Elem>> rel_;

    friend Congruence generate_congruence(const FiniteModel&,
                                          const std::vector<std::tuple<InstanceKey, Elem, InstanceKey, Elem>>&);
};

struct CongruenceViolation {
    std::string what;
    std::string detail;
};

struct CongruenceCheckResult {
    std::optional<CongruenceViolation> violation;
    bool ok() const { return !violation.has_value(); }
};

// Equivalence laws, dependent-setoid laws, and operation preservation.
CongruenceCheckResult validate_congruence(const Congruence& c);

Congruence kernel(const ModelMorphism& f);

struct FibrancyWitness {
    bool fibrant = true;
    std::string sort;
    InstanceKey from;
    InstanceKey to;
    Elem orphan;
    std::string to_string() const;
};

FibrancyWitness is_fibrant(const Congruence& c);
// All failing lifting instances, in deterministic order.
std::vector<FibrancyWitness> fibrancy_failures(const Congruence& c);
// The lift set of y1 : S(from) into the fiber over `to`.
std::vector<Elem> lift_set(const Congruence& c, const std::string& sort, const InstanceKey& from,
                           const Elem& y1, const InstanceKey& to);

using SeedPair = std::tuple<InstanceKey, Elem, InstanceKey, Elem>;

// Least congruence containing the seeds: equivalence closure per boundary
// class, operation-congruence propagation, and fiber pooling to fixpoint.
Congruence generate_congruence(const FiniteModel& m, const std::vector<SeedPair>& seeds);

struct QuotientResult {
    bool ok = false;
    FiniteModel quotient;
    ModelMorphism projection;
    FibrancyWitness refusal; // populated when !ok
};

// Pointwise quotient; refuses non-fibrant congruences.
QuotientResult quotient(const FiniteModel& m, const Congruence& c);

struct FactorizationResult {
    bool ok = false;
    ModelMorphism factor;
    bool uniqueness_checked = false; // exhaustive candidate enumeration ran
    std::string error;
};

// The unique morphism through the quotient for F with c <= ker F. Uniqueness
// is verified by exhaustive enumeration when the codomain is small.
FactorizationResult check_universal_property(const FiniteModel& q, const ModelMorphism& proj,
                                             const ModelMorphism& f,
                                             std::size_t enumeration_element_cap = 8);

} // namespace gatwb
