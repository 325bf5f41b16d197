#ifndef OPKIT_VERIFY_HPP
#define OPKIT_VERIFY_HPP

#include <string>
#include <vector>

namespace opkit::verify {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail; // key numbers, budget info, or the failure reason
    double seconds = 0.0;
};

// The named acceptance suites, in report order.
std::vector<std::string> suite_names();

// Runs one suite by name; throws domain_error for unknown names.
CriterionResult run_suite(const std::string& name);

std::vector<CriterionResult> run_all();

} // namespace opkit::verify

#endif
