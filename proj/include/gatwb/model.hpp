#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gatwb/signature.hpp"

namespace gatwb {

using Elem = std::string;
using ElemTuple = std::vector<Elem>;

struct InstanceKey {
    std::string sort;
    ElemTuple boundary;

    bool operator==(const InstanceKey& o) const { return sort == o.sort && boundary == o.boundary; }
    bool operator<(const InstanceKey& o) const {
        if (sort != o.sort) return sort < o.sort;
        return boundary < o.boundary;
    }
    std::string to_string() const;
};

// A finite table model of a first-order GAT. Carriers are kept in insertion
// order; absent instances are empty.
class FiniteModel {
public:
    FiniteModel() = default;
    explicit FiniteModel(Signature sig);

    const Signature& signature() const { return sig_; }

    void add_carrier(const InstanceKey& key, std::vector<Elem> elems);
    void add_element(const InstanceKey& key, const Elem& e);
    void set_op(const std::string& op, const ElemTuple& args, const Elem& result);

    const std::vector<Elem>& carrier(const InstanceKey& key) const; // empty if absent
    bool has_element(const InstanceKey& key, const Elem& e) const;
    std::optional<Elem> op_value(const std::string& op, const ElemTuple& args) const;

    // Declared instances of a sort, in insertion order.
    std::vector<InstanceKey> instances_of(const std::string& sort) const;
    // All declared instances in insertion order.
    const std::vector<InstanceKey>& instances() const { return order_; }

    std::size_t total_elements() const;

    // The instance a sort expression denotes under an environment.
    InstanceKey instance_of(const std::vector<Elem>& env, const SortExpr& s) const;

    // Enumerates all well-sorted environments for a telescope, in carrier
    // order, invoking f on each. f returns false to stop; returns false if
    // stopped early.
    bool for_each_env(const Telescope& tele, const std::function<bool(const std::vector<Elem>&)>& f) const;

    // Where an element lives (first declared instance containing it).
    std::optional<InstanceKey> find_element(const std::string& sort, const Elem& e) const;

private:
    Signature sig_;
    std::vector<InstanceKey> order_;
    std::map<InstanceKey, std::vector<Elem>> carriers_;
    std::map<std::pair<std::string, ElemTuple>, Elem> ops_;

public:
    const std::map<std::pair<std::string, ElemTuple>, Elem>& op_tables() const { return ops_; }
};

Elem eval(const FiniteModel& m, const std::vector<Elem>& env, const Term& t);

struct ModelViolation {
    std::string what;     // "totality", equation name, ...
    std::string detail;
};

struct ModelCheckResult {
    std::optional<ModelViolation> violation;
    bool ok() const { return !violation.has_value(); }
};

ModelCheckResult check_is_model(const FiniteModel& m);

struct ModelMorphism {
    FiniteModel source;
    FiniteModel target;
    // per-sort-instance element maps, keyed by source instance
    std::map<std::pair<InstanceKey, Elem>, Elem> map;

    std::optional<Elem> apply(const InstanceKey& key, const Elem& e) const;
    // image of a source instance key (maps each boundary element)
    InstanceKey apply_key(const InstanceKey& key) const;
};

ModelMorphism identity_morphism(const FiniteModel& m);
ModelMorphism compose_morphisms(const ModelMorphism& f, const ModelMorphism& g); // g after f

ModelCheckResult check_morphism(const ModelMorphism& f);

struct ContextualIsoResult {
    bool yes = false;
    std::string witness; // failing instance description when no
};

ContextualIsoResult check_contextual_iso(const ModelMorphism& f);

// Search for an isomorphism between two finite models (used on small
// instances by the quotient lemma suite).
std::optional<ModelMorphism> find_isomorphism(const FiniteModel& a, const FiniteModel& b,
                                              std::size_t attempt_cap = 2000000);

} // namespace gatwb
