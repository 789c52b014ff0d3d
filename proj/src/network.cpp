#include "bqc/network.hpp"

namespace bqc {

std::string to_string(AbortReason reason) {
    switch (reason) {
        case AbortReason::Retry: return "retry";
        case AbortReason::Cheating: return "cheating";
        case AbortReason::PolicyViolation: return "policy_violation";
    }
    throw SimError("unknown abort reason");
}

}  // namespace bqc
