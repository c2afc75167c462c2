#pragma once

#include <stdexcept>
#include <string>

namespace facsunit {

// Error kinds surfaced by the library.  Each maps to one named failure mode
// of a public operation; the message carries the offending values.
enum class errc {
    no_double_root,
    degenerate_ratio,
    not_coprime,
    zero_root,
    zero_linear_coefficient,
    invalid_spec,
    zero_argument,
    even_prime,
    bad_seed,
    internal_certificate_failure,
    empty_box,
    domain_error,
    hypothesis_violated,
    parameter_out_of_range,
};

inline const char* errc_name(errc e) {
    switch (e) {
        case errc::no_double_root: return "NoDoubleRoot";
        case errc::degenerate_ratio: return "DegenerateRatio";
        case errc::not_coprime: return "NotCoprime";
        case errc::zero_root: return "ZeroRoot";
        case errc::zero_linear_coefficient: return "ZeroLinearCoefficient";
        case errc::invalid_spec: return "InvalidSpec";
        case errc::zero_argument: return "ZeroArgument";
        case errc::even_prime: return "EvenPrime";
        case errc::bad_seed: return "BadSeed";
        case errc::internal_certificate_failure: return "InternalCertificateFailure";
        case errc::empty_box: return "EmptyBox";
        case errc::domain_error: return "DomainError";
        case errc::hypothesis_violated: return "HypothesisViolated";
        case errc::parameter_out_of_range: return "ParameterOutOfRange";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}

    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void raise(errc kind, const std::string& what) {
    throw error(kind, what);
}

}  // namespace facsunit
