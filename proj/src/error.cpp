#include "twistbench/error.hpp"

#include <sstream>

namespace twistbench {

void ValidationReport::add(std::string rule, std::string witness)
{
    violations_.push_back({std::move(rule), std::move(witness)});
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix)
{
    for (const auto& v : other.violations_) violations_.push_back({prefix + v.rule, v.witness});
}

std::string ValidationReport::to_string() const
{
    if (ok()) return "valid";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations_.size(); ++i) {
        if (i) os << '\n';
        os << violations_[i].rule << ": " << violations_[i].witness;
    }
    return os.str();
}

}  // namespace twistbench
