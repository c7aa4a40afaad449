#include "taskalloc/domain.hpp"

namespace taskalloc {

std::vector<FactorDefinition> builtin_factor_catalog() {
  const std::vector<Id> scale{"nominal", "low", "medium", "high"};
  auto def = [&](std::string_view id, std::string name, FactorCategory category) {
    return FactorDefinition{Id(id), std::move(name), category, scale};
  };
  using C = FactorCategory;
  return {
      def(factors::analyst_capability, "Analyst capability", C::site),
      def(factors::programmer_capability, "Programmer capability", C::site),
      def(factors::language_tool_experience, "Language and tool experience", C::site),
      def(factors::personnel_continuity, "Personnel continuity", C::site),
      def(factors::customer_proximity, "Customer proximity", C::site),
      def(factors::cultural_difference, "Cultural difference", C::site_pair),
      def(factors::time_zone_difference, "Time-zone difference", C::site_pair),
      def(factors::size, "Size", C::task),
      // Structural: weights live in the coupling matrix, not in factor levels.
      def(factors::coupling, "Coupling", C::task_pair),
      def(factors::application_experience, "Application experience", C::task_site),
      def(factors::platform_experience, "Platform experience", C::task_site),
  };
}

}  // namespace taskalloc
