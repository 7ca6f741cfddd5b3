#ifndef TPRH_CLI_HPP
#define TPRH_CLI_HPP

#include <string>
#include <vector>

namespace tprh {
namespace cli {

/// Exit-code contract: 0 success, 2 usage or parameter error,
/// 3 certification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCertification = 3;

/// Run one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace cli
}  // namespace tprh

#endif
