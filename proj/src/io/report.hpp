#pragma once

#include "core/relation.hpp"

#include <cstdint>
#include <string>

namespace relcalc {

std::string report_text(const std::string& name, const Relation& a);
std::string report_json(const std::string& name, const Relation& a);  // format_version 1
std::string classify_text(const std::string& name, const Relation& a);
// Header "re,im", one sample per line.
std::string nrange_csv(const Relation& a, size_t samples, std::uint64_t seed);

}  // namespace relcalc
