/*!
  \file bench.hpp
  \brief Reader and writer for the bench netlist format.

  Grammar: `INPUT(name)`, `OUTPUT(name)`, `out = KIND(in1, in2, ...)`,
  `#` comments.  Inputs named keyinput<i> are key inputs.
*/

#pragma once

#include <cctype>
#include <sstream>

#include "netlist.hpp"

namespace gantisat
{

class bench_parse_error : public std::runtime_error
{
public:
  bench_parse_error( int line, std::string const& msg )
      : std::runtime_error( "bench parse error at line " + std::to_string( line ) + ": " + msg ),
        line_( line )
  {
  }
  int line() const { return line_; }

private:
  int line_;
};

namespace detail
{

inline std::string strip( std::string const& s )
{
  size_t b = s.find_first_not_of( " \t\r\n" );
  if ( b == std::string::npos )
    return "";
  size_t e = s.find_last_not_of( " \t\r\n" );
  return s.substr( b, e - b + 1 );
}

inline bool parse_gate_kind( std::string name, GateKind& kind )
{
  for ( auto& c : name )
    c = char( std::toupper( uint8_t( c ) ) );
  if ( name == "AND" ) kind = GateKind::AND;
  else if ( name == "NAND" ) kind = GateKind::NAND;
  else if ( name == "OR" ) kind = GateKind::OR;
  else if ( name == "NOR" ) kind = GateKind::NOR;
  else if ( name == "XOR" ) kind = GateKind::XOR;
  else if ( name == "XNOR" ) kind = GateKind::XNOR;
  else if ( name == "NOT" || name == "INV" ) kind = GateKind::NOT;
  else if ( name == "BUF" || name == "BUFF" ) kind = GateKind::BUF;
  else return false;
  return true;
}

} // namespace detail

/*! Parses bench text into a finalized netlist.  Structural problems
    (unknown gate kind, undriven wire, cycle) raise bench_parse_error
    with the offending line where one exists. */
inline Netlist parse_bench( std::string const& text )
{
  Netlist net;
  std::istringstream in( text );
  std::string raw;
  int lineno = 0;
  while ( std::getline( in, raw ) )
  {
    ++lineno;
    auto hash = raw.find( '#' );
    if ( hash != std::string::npos )
      raw = raw.substr( 0, hash );
    std::string line = detail::strip( raw );
    if ( line.empty() )
      continue;

    auto paren = line.find( '(' );
    auto eq = line.find( '=' );
    if ( eq == std::string::npos )
    {
      // INPUT(name) or OUTPUT(name)
      if ( paren == std::string::npos || line.back() != ')' )
        throw bench_parse_error( lineno, "expected INPUT(..), OUTPUT(..) or assignment" );
      std::string head = detail::strip( line.substr( 0, paren ) );
      std::string arg = detail::strip( line.substr( paren + 1, line.size() - paren - 2 ) );
      for ( auto& c : head )
        c = char( std::toupper( uint8_t( c ) ) );
      if ( arg.empty() )
        throw bench_parse_error( lineno, "empty name" );
      if ( head == "INPUT" )
        net.add_input( arg );
      else if ( head == "OUTPUT" )
        net.add_output( arg );
      else
        throw bench_parse_error( lineno, "unknown declaration: " + head );
      continue;
    }

    std::string out = detail::strip( line.substr( 0, eq ) );
    std::string rhs = detail::strip( line.substr( eq + 1 ) );
    paren = rhs.find( '(' );
    if ( out.empty() || paren == std::string::npos || rhs.back() != ')' )
      throw bench_parse_error( lineno, "malformed assignment" );
    GateKind kind;
    std::string kind_name = detail::strip( rhs.substr( 0, paren ) );
    if ( !detail::parse_gate_kind( kind_name, kind ) )
      throw bench_parse_error( lineno, "unknown gate kind: " + kind_name );
    std::vector<std::string> ins;
    std::string args = rhs.substr( paren + 1, rhs.size() - paren - 2 );
    size_t pos = 0;
    while ( pos <= args.size() )
    {
      auto comma = args.find( ',', pos );
      std::string tok = detail::strip( comma == std::string::npos ? args.substr( pos )
                                                                  : args.substr( pos, comma - pos ) );
      if ( !tok.empty() )
        ins.push_back( tok );
      if ( comma == std::string::npos )
        break;
      pos = comma + 1;
    }
    if ( ins.empty() )
      throw bench_parse_error( lineno, "gate with no inputs" );
    try
    {
      net.add_gate( kind, ins, out );
    }
    catch ( netlist_error const& e )
    {
      throw bench_parse_error( lineno, e.what() );
    }
  }
  try
  {
    net.finalize();
  }
  catch ( netlist_error const& e )
  {
    throw bench_parse_error( 0, e.what() );
  }
  return net;
}

/*! Emits bench text; parse(emit(net)) reproduces the netlist and
    emit(parse(text)) is byte-stable. */
inline std::string emit_bench( Netlist const& net )
{
  std::ostringstream out;
  for ( auto w : net.inputs() )
    out << "INPUT(" << net.wire_name( w ) << ")\n";
  for ( auto w : net.outputs() )
    out << "OUTPUT(" << net.wire_name( w ) << ")\n";
  for ( auto const& g : net.gates() )
  {
    out << net.wire_name( g.output ) << " = " << gate_kind_name( g.kind ) << "(";
    for ( size_t i = 0; i < g.inputs.size(); ++i )
      out << ( i ? ", " : "" ) << net.wire_name( g.inputs[i] );
    out << ")\n";
  }
  return out.str();
}

} // namespace gantisat
