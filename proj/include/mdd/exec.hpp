#ifndef MDD_EXEC_HPP
#define MDD_EXEC_HPP

namespace mdd {

// Serial is the reference path kept for testing; Parallel runs the same loop
// under OpenMP and must produce identical results.
enum class Exec { Serial, Parallel };

}  // namespace mdd

#endif
