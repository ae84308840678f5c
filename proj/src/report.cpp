#include "psimat/report.hpp"

#include <sstream>

namespace psimat {

using nlohmann::json;

json to_json(const AxiomReport& r) {
    json j;
    j["pass"] = r.all_pass();
    j["im_pairs_checked"] = r.im_pairs_checked;
    j["im_exhaustive"] = r.im_exhaustive;
    json verdicts = json::array();
    for (auto& v : r.verdicts) {
        json jv;
        jv["axiom"] = axiom_name(v.axiom);
        jv["pass"] = v.pass;
        if (!v.pass) jv["witness"] = v.witness;
        verdicts.push_back(jv);
    }
    j["verdicts"] = verdicts;
    return j;
}

std::string to_text(const AxiomReport& r) {
    std::ostringstream os;
    for (auto& v : r.verdicts) {
        os << "  (" << axiom_name(v.axiom) << ") " << (v.pass ? "pass" : "FAIL");
        if (!v.pass) os << "  witness: " << v.witness;
        os << "\n";
    }
    os << "  IM pairs checked: " << r.im_pairs_checked
       << (r.im_exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
    return os.str();
}

json to_json(const CircuitSystem& s) {
    json j;
    j["ground"] = s.ground;
    auto fam = [](const std::vector<EdgeSet>& f) {
        json out = json::array();
        for (auto& e : f) out.push_back(e.ids());
        return out;
    };
    j["circuits"] = fam(s.circuits);
    j["cocircuits"] = fam(s.cocircuits);
    return j;
}

CircuitSystem circuit_system_from_json(const json& j) {
    CircuitSystem s;
    s.ground = j.at("ground").get<int>();
    auto fam = [&](const char* key) {
        std::vector<EdgeSet> out;
        for (auto& arr : j.at(key)) {
            EdgeSet e(s.ground);
            for (auto& x : arr) e.set(x.get<int>());
            out.push_back(e);
        }
        return out;
    };
    s.circuits = fam("circuits");
    s.cocircuits = fam("cocircuits");
    s.normalize();
    return s;
}

json to_json(const PsiVerdict& v) {
    json j;
    j["value"] = v.value;
    j["bound"] = v.bound;
    j["periodic"] = v.periodic;
    j["certificate"] = v.certificate;
    return j;
}

json to_json(const LazyFamily& f, const EndClassification& c) {
    json j;
    j["end"] = c.chain.name();
    j["dominated"] = c.dominated;
    if (c.dominator) j["dominator"] = f.vertex_label(*c.dominator);
    j["verdict"] = c.verdict.describe(f);
    return j;
}

}  // namespace psimat
