#include <iostream>
#include <string>
#include <vector>

#include "brandt/errors.hpp"
#include "brandt/scenario.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  try {
    const brandt::ParseResult parsed = brandt::ParseArgs(args);
    if (!parsed.spec) {
      std::cout << parsed.help;
      return 0;
    }
    const brandt::ScenarioOutcome outcome = brandt::RunScenario(*parsed.spec);
    std::cout << outcome.summary;
    brandt::EmitReport(outcome, *parsed.spec);
    return outcome.exit_code;
  } catch (const brandt::LabError& e) {
    std::cerr << "brandt-lab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "brandt-lab: internal error: " << e.what() << "\n";
    return 2;
  }
}
