#ifndef RISKBENCH_UTIL_EMBEDDED_DATA_H_
#define RISKBENCH_UTIL_EMBEDDED_DATA_H_

#include <string_view>

// JSON tables from data/, compiled into the library.
namespace riskbench::embedded {

std::string_view ContractionsJson();
std::string_view MojibakeJson();
std::string_view LexiconJson();
std::string_view SymptomAliasesJson();

}  // namespace riskbench::embedded

#endif  // RISKBENCH_UTIL_EMBEDDED_DATA_H_
