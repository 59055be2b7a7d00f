#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "rcp/generators.hpp"
#include "rcp/kernel.hpp"
#include "rcp/policy.hpp"

// JSON documents for instances, verdicts and kernel traces. Users and
// resources are named by string ids on disk and by dense indices in memory.
// Parsers report problems as values; they never throw on bad input.
namespace rcp::io {

inline constexpr const char* kInstanceVersion = "rcp-instance/1";
inline constexpr const char* kVerdictVersion = "rcp-verdict/1";
inline constexpr const char* kTraceVersion = "rcp-kernel-trace/1";

struct ParseError {
    std::string message;
    std::string field;  // JSON pointer of the offending value, empty for syntax errors
    int line = 0;       // 1-based, syntax errors only

    std::string to_string() const;
};

template <class T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(ParseError error) : v_(std::move(error)) {}

    bool ok() const { return v_.index() == 0; }
    explicit operator bool() const { return ok(); }
    const T& value() const { return std::get<0>(v_); }
    T& value() { return std::get<0>(v_); }
    const ParseError& error() const { return std::get<1>(v_); }

private:
    std::variant<T, ParseError> v_;
};

struct InstanceDocument {
    Instance instance;
    std::optional<Provenance> provenance;
};

// Field order is fixed, so equal inputs give byte-identical text.
std::string emit_instance(const Instance& inst, const std::optional<Provenance>& provenance = std::nullopt);
std::string emit_instance(const GeneratedInstance& g);
Result<InstanceDocument> parse_instance(const std::string& text);

// Witness users are written with the ids of `inst`, the instance the verdict
// was computed on. Elapsed time is left out to keep documents reproducible.
std::string emit_verdict(const Verdict& v, const Instance& inst, bool with_witness = true, bool with_stats = true);
Result<Verdict> parse_verdict(const std::string& text, const Instance& inst);

std::string emit_trace(const KernelTrace& trace);
Result<KernelTrace> parse_trace(const std::string& text);

} // namespace rcp::io
