#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "mazu/domain.hpp"

namespace mazu {

/// Parses a domain spec document. Numbers may be JSON numbers or strings
/// holding rationals ("1/3"); points may be arrays or "x,y[,z]" strings.
/// Named sub-trees live under "defs" and are referenced as {"ref": name}.
DomainSpec specFromJson(const nlohmann::json& doc);
nlohmann::json specToJson(const DomainSpec& spec);

DomainSpec loadSpecFile(const std::string& path);
void saveSpecFile(const DomainSpec& spec, const std::string& path);

/// FNV-1a over the canonical JSON dump.
std::uint64_t specHash(const DomainSpec& spec);
std::string hashHex(std::uint64_t h);

}  // namespace mazu
