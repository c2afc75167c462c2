#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "facsunit/bounds.hpp"
#include "facsunit/lifting.hpp"
#include "facsunit/recurrence.hpp"
#include "facsunit/search.hpp"

// JSON wire formats.  Big integers travel as decimal strings; the small
// spec integers stay numeric.

namespace facsunit {

inline nlohmann::json to_json(const RecurrenceSpec& s) {
    return {{"r", {s.r1, s.r2, s.r3}}, {"u", {s.u0, s.u1, s.u2}}};
}

inline RecurrenceSpec spec_from_json(const nlohmann::json& j) {
    auto r = j.at("r");
    auto u = j.at("u");
    if (r.size() != 3 || u.size() != 3)
        raise(errc::invalid_spec, "expected {\"r\":[r1,r2,r3],\"u\":[u0,u1,u2]}");
    RecurrenceSpec s;
    s.r1 = r[0].get<long>();
    s.r2 = r[1].get<long>();
    s.r3 = r[2].get<long>();
    s.u0 = u[0].get<long>();
    s.u1 = u[1].get<long>();
    s.u2 = u[2].get<long>();
    return s;
}

/// Resolve "cullen" / "woodall" or fall through to JSON parsing.
inline RecurrenceSpec resolve_spec(const std::string& name_or_json) {
    if (name_or_json == "cullen") return RecurrenceSpec::cullen();
    if (name_or_json == "woodall") return RecurrenceSpec::woodall();
    return spec_from_json(nlohmann::json::parse(name_or_json));
}

inline nlohmann::json to_json(const ClosedForm& cf) {
    return {{"alpha", cf.alpha},
            {"beta", cf.beta},
            {"delta", cf.delta.get_str()},
            {"delta1", cf.delta1.get_str()},
            {"delta2", cf.delta2.get_str()},
            {"delta3", cf.delta3.get_str()},
            {"a", cf.a.get_str()},
            {"c", cf.c.get_str()},
            {"b", cf.b.get_str()}};
}

inline nlohmann::json to_json(const LiftResult& r) {
    return {{"p", r.p},
            {"t", r.t.get_str()},
            {"n0", r.n0},
            {"depth", r.k},
            {"digits", r.digits},
            {"n_final", r.n_final.get_str()}};
}

inline nlohmann::json to_json(const ValuationBound& b) {
    nlohmann::json wit = nlohmann::json::array();
    for (const auto& [n0, rep] : b.witnesses) wit.push_back({{"n0", n0}, {"representative", rep.get_str()}});
    return {{"p", b.p},
            {"t", b.t.get_str()},
            {"limit", b.limit.get_str()},
            {"k_max", b.k_max},
            {"witnesses", wit}};
}

inline nlohmann::json to_json(const ScanReport& r) {
    nlohmann::json j{{"max_val", r.max_val},
                     {"has_max", r.has_max},
                     {"count_scanned", r.count_scanned},
                     {"count_skipped_zero", r.count_skipped_zero},
                     {"count_skipped_collapsed", r.count_skipped_collapsed},
                     {"width_escalations", r.width_escalations}};
    if (r.has_max)
        j["argmax"] = {{"exponents", r.argmax.exponents},
                       {"shift_index", r.argmax.shift_index},
                       {"shift", r.argmax.shift_label}};
    return j;
}

inline nlohmann::json to_json(const SolutionRecord& rec) {
    return {{"family", family_name(rec.family)},
            {"n", rec.n},
            {"m", rec.m},
            {"eps", rec.eps},
            {"value", rec.value.get_str()},
            {"sign_s", rec.sign_s},
            {"exponents", rec.exponents},
            {"degenerate", rec.degenerate}};
}

inline nlohmann::json to_json(const SolveResult& res) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : res.records) recs.push_back(to_json(r));
    nlohmann::json inter = nlohmann::json::array();
    for (const auto& v : res.intersection) inter.push_back(v.get_str());
    return {{"primes", res.primes}, {"records", recs}, {"intersection", inter}};
}

/// CSV mirroring the solution table layout: one row per identity, ordered
/// like the table (by |value|, positive first).
inline std::string solve_result_csv(const SolveResult& res) {
    std::vector<const SolutionRecord*> order;
    for (const auto& r : res.records) order.push_back(&r);
    std::sort(order.begin(), order.end(), [](const SolutionRecord* a, const SolutionRecord* b) {
        Int aa = abs(a->value), ab = abs(b->value);
        if (aa != ab) return aa < ab;
        if (a->sign_s != b->sign_s) return a->sign_s > b->sign_s;
        if (a->family != b->family) return a->family == Family::cullen;
        if (a->n != b->n) return a->n < b->n;
        if (a->m != b->m) return a->m < b->m;
        return a->eps > b->eps;
    });
    std::string csv = "value,family,n,m,eps,sign_s";
    for (auto p : res.primes) csv += ",e" + std::to_string(p);
    csv += ",degenerate\n";
    for (const auto* r : order) {
        csv += r->value.get_str() + "," + family_name(r->family) + "," + std::to_string(r->n) + "," +
               std::to_string(r->m) + "," + (r->eps > 0 ? "+1" : "-1") + "," +
               (r->sign_s > 0 ? "+1" : "-1");
        for (auto e : r->exponents) csv += "," + std::to_string(e);
        csv += std::string(",") + (r->degenerate ? "yes" : "no") + "\n";
    }
    return csv;
}

inline nlohmann::json to_json(const AuditEntry& a) {
    return {{"formula", a.formula}, {"inputs", a.inputs}, {"value", a.value}};
}

inline nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json nu = nlohmann::json::object();
    for (const auto& [p, v] : r.nu_bounds) nu[std::to_string(p)] = v;
    nlohmann::json audit = nlohmann::json::array();
    for (const auto& a : r.audit) audit.push_back(to_json(a));
    return {{"X", r.X},
            {"Y", r.Y},
            {"log_n_bound", r.log_n_bound},
            {"zero_bound", r.zero_bound},
            {"nu_bounds", nu},
            {"audit", audit}};
}

}  // namespace facsunit
