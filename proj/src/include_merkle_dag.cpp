#include <pfxauth/merkle_dag.hpp>
#include <pfxauth/merkle_dag.hpp>
