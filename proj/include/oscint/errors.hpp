#ifndef OSCINT_ERRORS_HPP
#define OSCINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oscint {

// Error taxonomy used across the engine.  Every throw site attaches a stable
// machine-readable code; the CLI maps codes to exit status (input errors -> 2,
// budget errors -> 3).
enum class ErrorCode {
    input,          // malformed or inconsistent problem data
    budget,         // request exceeds a stated resolution/dimension budget
    invariant,      // internal invariant breached (caller bug)
    unsupported,    // valid input outside the engine's closed class
};

class EngineError : public std::runtime_error {
public:
    EngineError(ErrorCode kind, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

    ErrorCode kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorCode kind_;
    std::string code_;
};

inline EngineError input_error(std::string code, const std::string& what) {
    return EngineError(ErrorCode::input, std::move(code), what);
}
inline EngineError budget_error(std::string code, const std::string& what) {
    return EngineError(ErrorCode::budget, std::move(code), what);
}
inline EngineError invariant_error(std::string code, const std::string& what) {
    return EngineError(ErrorCode::invariant, std::move(code), what);
}
inline EngineError unsupported_error(std::string code, const std::string& what) {
    return EngineError(ErrorCode::unsupported, std::move(code), what);
}

} // namespace oscint

#endif
