#pragma once

#include <string>

#include <json.hpp>

#include "psimat/ends.hpp"
#include "psimat/matroid.hpp"
#include "psimat/psi.hpp"

namespace psimat {

nlohmann::json to_json(const AxiomReport& r);
std::string to_text(const AxiomReport& r);

nlohmann::json to_json(const CircuitSystem& s);
CircuitSystem circuit_system_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PsiVerdict& v);
nlohmann::json to_json(const LazyFamily& f, const EndClassification& c);

}  // namespace psimat
