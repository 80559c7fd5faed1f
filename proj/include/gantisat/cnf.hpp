/*!
  \file cnf.hpp
  \brief Clause-level encodings of netlists: Tseitin, miters, folded copies.

  Satisfying assignments of an encoded circuit, restricted to its
  input/output variables, coincide exactly with the circuit's I/O
  relation.  Copies can share input or key variables, which is how the
  miter and the per-query consistency constraints are formed.
*/

#pragma once

#include <map>
#include <sstream>

#include "netlist.hpp"

namespace gantisat
{

struct CnfFormula
{
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::map<std::string, int> wire_vars;
};

/*! Clause accumulator with a running variable counter. */
struct CnfBuilder
{
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() { return ++num_vars; }

  void add( std::vector<int> lits ) { clauses.push_back( std::move( lits ) ); }
  void add( std::initializer_list<int> lits ) { clauses.emplace_back( lits ); }
};

namespace detail
{

/*! y <-> AND of literals. */
inline void encode_and( CnfBuilder& b, int y, std::vector<int> const& ins )
{
  std::vector<int> long_clause;
  long_clause.reserve( ins.size() + 1 );
  long_clause.push_back( y );
  for ( int a : ins )
  {
    b.add( { -y, a } );
    long_clause.push_back( -a );
  }
  b.add( std::move( long_clause ) );
}

/*! y <-> OR of literals. */
inline void encode_or( CnfBuilder& b, int y, std::vector<int> const& ins )
{
  std::vector<int> long_clause;
  long_clause.reserve( ins.size() + 1 );
  long_clause.push_back( -y );
  for ( int a : ins )
  {
    b.add( { y, -a } );
    long_clause.push_back( a );
  }
  b.add( std::move( long_clause ) );
}

/*! y <-> a xor b (4 clauses). */
inline void encode_xor2( CnfBuilder& b, int y, int a, int c )
{
  b.add( { -y, a, c } );
  b.add( { -y, -a, -c } );
  b.add( { y, -a, c } );
  b.add( { y, a, -c } );
}

/*! y <-> a. */
inline void encode_eq( CnfBuilder& b, int y, int a )
{
  b.add( { -y, a } );
  b.add( { y, -a } );
}

/*! Encodes one gate over signed input literals, writing to literal y. */
inline void encode_gate( CnfBuilder& b, GateKind kind, int y, std::vector<int> ins )
{
  switch ( kind )
  {
  case GateKind::AND: encode_and( b, y, ins ); break;
  case GateKind::NAND: encode_and( b, -y, ins ); break;
  case GateKind::OR: encode_or( b, y, ins ); break;
  case GateKind::NOR: encode_or( b, -y, ins ); break;
  case GateKind::XOR:
  case GateKind::XNOR:
  {
    int acc = ins[0];
    for ( size_t i = 1; i + 1 < ins.size(); ++i )
    {
      int aux = b.new_var();
      encode_xor2( b, aux, acc, ins[i] );
      acc = aux;
    }
    int target = kind == GateKind::XOR ? y : -y;
    if ( ins.size() == 1 )
      encode_eq( b, target, acc );
    else
      encode_xor2( b, target, acc, ins.back() );
    break;
  }
  case GateKind::NOT: encode_eq( b, y, -ins[0] ); break;
  case GateKind::BUF: encode_eq( b, y, ins[0] ); break;
  }
}

} // namespace detail

/*! Variables of one encoded circuit copy, aligned with the netlist's
    primary inputs, key inputs, and primary outputs. */
struct CircuitVars
{
  std::vector<int> x;
  std::vector<int> keys;
  std::vector<int> y;
  std::vector<int> wires; // variable per wire index
};

/*! \brief Encodes a full circuit copy.

  Pass \p shared_x / \p shared_keys to reuse variables of an earlier copy
  for the primary or key inputs; fresh variables are allocated otherwise.
*/
inline CircuitVars encode_circuit( CnfBuilder& b, Netlist const& net,
                                   std::span<int const> shared_x = {},
                                   std::span<int const> shared_keys = {} )
{
  CircuitVars cv;
  cv.wires.assign( net.num_wires(), 0 );
  for ( size_t i = 0; i < net.primary_inputs().size(); ++i )
  {
    int v = shared_x.empty() ? b.new_var() : shared_x[i];
    cv.wires[net.primary_inputs()[i]] = v;
    cv.x.push_back( v );
  }
  for ( size_t i = 0; i < net.key_inputs().size(); ++i )
  {
    int v = shared_keys.empty() ? b.new_var() : shared_keys[i];
    cv.wires[net.key_inputs()[i]] = v;
    cv.keys.push_back( v );
  }
  for ( auto gi : net.topo_order() )
    cv.wires[net.gates()[gi].output] = b.new_var();
  for ( auto gi : net.topo_order() )
  {
    auto const& g = net.gates()[gi];
    std::vector<int> ins;
    ins.reserve( g.inputs.size() );
    for ( auto in : g.inputs )
      ins.push_back( cv.wires[in] );
    detail::encode_gate( b, g.kind, cv.wires[g.output], std::move( ins ) );
  }
  for ( auto w : net.outputs() )
    cv.y.push_back( cv.wires[w] );
  return cv;
}

/*! \brief Standard Tseitin encoding of a netlist.

  Every wire receives a variable (in wire-index order, starting at 1);
  chained multi-input XORs add auxiliaries beyond.
*/
inline CnfFormula tseitin( Netlist const& net )
{
  CnfBuilder b;
  CircuitVars cv;
  cv.wires.assign( net.num_wires(), 0 );
  for ( uint32_t w = 0; w < net.num_wires(); ++w )
    cv.wires[w] = b.new_var();
  for ( auto gi : net.topo_order() )
  {
    auto const& g = net.gates()[gi];
    std::vector<int> ins;
    for ( auto in : g.inputs )
      ins.push_back( cv.wires[in] );
    detail::encode_gate( b, g.kind, cv.wires[g.output], std::move( ins ) );
  }
  CnfFormula f;
  f.num_vars = b.num_vars;
  f.clauses = std::move( b.clauses );
  for ( uint32_t w = 0; w < net.num_wires(); ++w )
    f.wire_vars[net.wire_name( w )] = cv.wires[w];
  return f;
}

/*! \brief Encodes a copy with the primary inputs fixed to constants.

  Gates whose inputs are all known fold away at encode time, so the copy
  reduces to the key-dependent residue.  Output wires are constrained to
  \p y_bits; a constant output contradicting its expected bit yields an
  empty clause.
*/
inline void encode_circuit_folded( CnfBuilder& b, Netlist const& net, uint64_t x_bits,
                                   uint64_t y_bits, std::span<int const> key_vars )
{
  constexpr int kUnknown = 0;
  struct WireState
  {
    int lit = kUnknown; // nonzero literal when symbolic
    int8_t cst = -1;    // 0/1 when constant
  };
  std::vector<WireState> st( net.num_wires() );
  for ( size_t i = 0; i < net.primary_inputs().size(); ++i )
    st[net.primary_inputs()[i]].cst = int8_t( ( x_bits >> i ) & 1u );
  for ( size_t i = 0; i < net.key_inputs().size(); ++i )
    st[net.key_inputs()[i]].lit = key_vars[i];

  for ( auto gi : net.topo_order() )
  {
    auto const& g = net.gates()[gi];
    WireState out;
    switch ( g.kind )
    {
    case GateKind::AND:
    case GateKind::NAND:
    case GateKind::OR:
    case GateKind::NOR:
    {
      bool const is_or = g.kind == GateKind::OR || g.kind == GateKind::NOR;
      bool const inv = g.kind == GateKind::NAND || g.kind == GateKind::NOR;
      // For OR, dualize and fold as an AND of negated literals.
      int8_t absorbing = is_or ? 1 : 0;
      bool dead = false;
      std::vector<int> lits;
      for ( auto in : g.inputs )
      {
        auto const& s = st[in];
        if ( s.cst >= 0 )
        {
          if ( s.cst == absorbing )
          {
            dead = true;
            break;
          }
        }
        else
        {
          lits.push_back( is_or ? -s.lit : s.lit );
        }
      }
      if ( dead )
        out.cst = int8_t( ( absorbing ^ ( inv ? 1 : 0 ) ) );
      else if ( lits.empty() )
        out.cst = int8_t( ( 1 ^ absorbing ^ ( inv ? 1 : 0 ) ) );
      else if ( lits.size() == 1 )
      {
        int v = lits[0];
        out.lit = ( is_or ? -v : v ) * ( inv ? -1 : 1 );
      }
      else
      {
        int v = b.new_var();
        detail::encode_and( b, v, lits );
        // v holds AND(lits); for OR gates lits were negated, so OR = -v.
        out.lit = ( is_or ? -v : v ) * ( inv ? -1 : 1 );
      }
      break;
    }
    case GateKind::XOR:
    case GateKind::XNOR:
    {
      int parity = g.kind == GateKind::XNOR ? 1 : 0;
      std::vector<int> lits;
      for ( auto in : g.inputs )
      {
        auto const& s = st[in];
        if ( s.cst >= 0 )
          parity ^= s.cst;
        else
          lits.push_back( s.lit );
      }
      if ( lits.empty() )
        out.cst = int8_t( parity );
      else
      {
        int acc = lits[0];
        for ( size_t i = 1; i < lits.size(); ++i )
        {
          int aux = b.new_var();
          detail::encode_xor2( b, aux, acc, lits[i] );
          acc = aux;
        }
        out.lit = parity ? -acc : acc;
      }
      break;
    }
    case GateKind::NOT:
    {
      auto const& s = st[g.inputs[0]];
      if ( s.cst >= 0 )
        out.cst = int8_t( 1 - s.cst );
      else
        out.lit = -s.lit;
      break;
    }
    case GateKind::BUF:
    default:
      out = st[g.inputs[0]];
      break;
    }
    st[g.output] = out;
  }

  for ( size_t j = 0; j < net.outputs().size(); ++j )
  {
    bool const expect = ( y_bits >> j ) & 1u;
    auto const& s = st[net.outputs()[j]];
    if ( s.cst >= 0 )
    {
      if ( bool( s.cst ) != expect )
        b.add( std::vector<int>{} ); // contradiction
    }
    else
    {
      b.add( { expect ? s.lit : -s.lit } );
    }
  }
}

/*! Two circuit copies sharing the primary inputs with a forced output
    difference. */
struct MiterCnf
{
  CnfFormula cnf;
  CircuitVars copy1;
  CircuitVars copy2;
};

/*! \brief Builds the key-differencing miter of a locked netlist.

  The two copies share X and carry distinct key and output variables; an
  added constraint requires at least one output pair to differ.  A model
  therefore names an input pattern on which two candidate keys disagree.
*/
inline MiterCnf build_miter( Netlist const& locked )
{
  if ( locked.key_inputs().empty() )
    throw std::invalid_argument( "build_miter: netlist has no key inputs" );
  CnfBuilder b;
  MiterCnf m;
  m.copy1 = encode_circuit( b, locked );
  m.copy2 = encode_circuit( b, locked, m.copy1.x );
  if ( locked.outputs().size() == 1 )
  {
    b.add( { m.copy1.y[0], m.copy2.y[0] } );
    b.add( { -m.copy1.y[0], -m.copy2.y[0] } );
  }
  else
  {
    std::vector<int> any_diff;
    for ( size_t j = 0; j < locked.outputs().size(); ++j )
    {
      int d = b.new_var();
      detail::encode_xor2( b, d, m.copy1.y[j], m.copy2.y[j] );
      any_diff.push_back( d );
    }
    b.add( std::move( any_diff ) );
  }
  m.cnf.num_vars = b.num_vars;
  m.cnf.clauses = std::move( b.clauses );
  for ( uint32_t w = 0; w < locked.num_wires(); ++w )
  {
    m.cnf.wire_vars["c1_" + locked.wire_name( w )] = m.copy1.wires[w];
    m.cnf.wire_vars["c2_" + locked.wire_name( w )] = m.copy2.wires[w];
  }
  return m;
}

/*! DIMACS text; clause order is preserved, so output is byte-stable. */
inline std::string to_dimacs( CnfFormula const& f )
{
  std::ostringstream out;
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for ( auto const& c : f.clauses )
  {
    for ( auto l : c )
      out << l << " ";
    out << "0\n";
  }
  return out.str();
}

/*! Parses DIMACS text (comments and the problem line are honored). */
inline CnfFormula parse_dimacs( std::string const& text )
{
  CnfFormula f;
  std::istringstream in( text );
  std::string line;
  while ( std::getline( in, line ) )
  {
    if ( line.empty() || line[0] == 'c' )
      continue;
    if ( line[0] == 'p' )
    {
      std::istringstream hdr( line );
      std::string p, cnf;
      hdr >> p >> cnf >> f.num_vars;
      continue;
    }
    std::istringstream ls( line );
    int lit;
    std::vector<int> clause;
    while ( ls >> lit )
    {
      if ( lit == 0 )
      {
        f.clauses.push_back( clause );
        clause.clear();
      }
      else
      {
        clause.push_back( lit );
        f.num_vars = std::max( f.num_vars, std::abs( lit ) );
      }
    }
    if ( !clause.empty() )
      f.clauses.push_back( clause );
  }
  return f;
}

} // namespace gantisat
