#include <pfxauth/explicit_dag.hpp>
#include <pfxauth/explicit_dag.hpp>
