#ifndef SFP_TRISTATE_HPP
#define SFP_TRISTATE_HPP

#include <optional>
#include <string>

namespace sfp {

enum class Verdict { Proved, Refuted, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Proved: return "Proved";
        case Verdict::Refuted: return "Refuted";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

/// Degree/homological bounds within which a verdict was established.
struct CertifiedBounds {
    std::optional<int> homological;  // i <= n
    std::optional<int> internal;     // internal degree <= d
    std::string caveat;              // e.g. dependence on a truncation
};

struct TriState {
    Verdict verdict = Verdict::Unknown;
    std::string reason;
    CertifiedBounds bounds;

    static TriState proved(std::string why = {}) { return {Verdict::Proved, std::move(why), {}}; }
    static TriState refuted(std::string why) { return {Verdict::Refuted, std::move(why), {}}; }
    static TriState unknown(std::string why) { return {Verdict::Unknown, std::move(why), {}}; }

    bool is_proved() const { return verdict == Verdict::Proved; }
    bool is_refuted() const { return verdict == Verdict::Refuted; }
    bool is_unknown() const { return verdict == Verdict::Unknown; }
};

}  // namespace sfp

#endif  // SFP_TRISTATE_HPP
