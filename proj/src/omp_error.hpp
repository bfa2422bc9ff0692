#pragma once

#include <exception>

namespace unidec::detail {

// Exceptions may not cross an OpenMP region; keep the first and rethrow.
class ErrorSlot {
 public:
  void capture() {
#pragma omp critical(unidec_error_slot)
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace unidec::detail
