#ifndef BNF_ERRORS_HPP
#define BNF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bnf
{

// Base of every error raised by the library. name() is the stable
// identifier written into reports.
class error : public std::runtime_error
{
public:
    error(std::string name, const std::string &what)
        : std::runtime_error(what), m_name(std::move(name))
    {
    }
    const std::string &name() const noexcept
    {
        return m_name;
    }

private:
    std::string m_name;
};

#define BNF_DEFINE_ERROR(cls)                                                                                         \
    struct cls : error {                                                                                              \
        explicit cls(const std::string &what) : error(#cls, what) {}                                                  \
    }

// birkhoff_engine
BNF_DEFINE_ERROR(NonCritical);
BNF_DEFINE_ERROR(DegenerateLeading);
BNF_DEFINE_ERROR(GeneratorTooLow);
BNF_DEFINE_ERROR(CocycleViolation);
BNF_DEFINE_ERROR(NonCommuting);
BNF_DEFINE_ERROR(NonResonantTerm);
BNF_DEFINE_ERROR(NonRealCoefficient);

// cohomology_numeric
BNF_DEFINE_ERROR(EvalAtOrigin);
BNF_DEFINE_ERROR(OnSingularAxis);
BNF_DEFINE_ERROR(CrossCommutingViolation);
BNF_DEFINE_ERROR(VerificationFailure);

// flow_lab
BNF_DEFINE_ERROR(StepOverflow);

// cli_frontend
BNF_DEFINE_ERROR(ParseError);

#undef BNF_DEFINE_ERROR

// Input rejected by a validation stage; cause() names the underlying
// engine error (e.g. "NonCritical").
class ValidationError : public error
{
public:
    ValidationError(std::string cause, const std::string &what)
        : error("ValidationError", what), m_cause(std::move(cause))
    {
    }
    const std::string &cause() const noexcept
    {
        return m_cause;
    }

private:
    std::string m_cause;
};

} // namespace bnf

#endif
