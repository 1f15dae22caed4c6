#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace twistbench {

struct Violation {
    std::string rule;
    std::string witness;
};

class ValidationReport {
public:
    void add(std::string rule, std::string witness);
    void merge(const ValidationReport& other, const std::string& prefix = "");
    bool ok() const { return violations_.empty(); }
    const std::vector<Violation>& violations() const { return violations_; }
    std::string to_string() const;

private:
    std::vector<Violation> violations_;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 1; }
};

// malformed input files or unknown keys
class ParseError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

// structurally well-formed data that violates a mathematical invariant
class InvalidError : public Error {
public:
    explicit InvalidError(const std::string& what) : Error(what) {}
    InvalidError(const std::string& what, ValidationReport report)
        : Error(what + "\n" + report.to_string()), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class CapExceededError : public Error {
public:
    CapExceededError(const std::string& what, std::size_t cap)
        : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
    std::size_t cap() const { return cap_; }
    int exit_code() const override { return 4; }

private:
    std::size_t cap_;
};

}  // namespace twistbench
