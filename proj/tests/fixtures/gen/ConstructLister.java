import java.io.ByteArrayOutputStream;
import java.io.File;
import java.io.InputStream;
import java.lang.reflect.Constructor;
import java.lang.reflect.Field;
import java.lang.reflect.Method;
import java.lang.reflect.Modifier;
import java.net.URL;
import java.net.URLClassLoader;
import java.util.ArrayList;
import java.util.Collections;
import java.util.Enumeration;
import java.util.List;
import java.util.jar.JarEntry;
import java.util.jar.JarFile;

// Lists every class, method, constructor and field of a JAR using the JVM's
// own class loader and reflection. One line per construct:
//   KIND owner name descriptor modifiers deprecated synthetic major
public class ConstructLister {

  static String descriptorOf(Class c) {
    if (c == Void.TYPE) return "V";
    if (c == Boolean.TYPE) return "Z";
    if (c == Byte.TYPE) return "B";
    if (c == Character.TYPE) return "C";
    if (c == Short.TYPE) return "S";
    if (c == Integer.TYPE) return "I";
    if (c == Long.TYPE) return "J";
    if (c == Float.TYPE) return "F";
    if (c == Double.TYPE) return "D";
    if (c.isArray()) return "[" + descriptorOf(c.getComponentType());
    return "L" + c.getName().replace('.', '/') + ";";
  }

  static String params(Class[] types) {
    StringBuffer sb = new StringBuffer("(");
    for (int i = 0; i < types.length; i++) sb.append(descriptorOf(types[i]));
    sb.append(")");
    return sb.toString();
  }

  static String mods(int m) {
    StringBuffer sb = new StringBuffer();
    if (Modifier.isPublic(m)) sb.append("public,");
    if (Modifier.isProtected(m)) sb.append("protected,");
    if (Modifier.isPrivate(m)) sb.append("private,");
    if (Modifier.isStatic(m)) sb.append("static,");
    if (Modifier.isFinal(m)) sb.append("final,");
    if (Modifier.isAbstract(m)) sb.append("abstract,");
    if (sb.length() == 0) return "-";
    return sb.substring(0, sb.length() - 1);
  }

  static int majorOf(JarFile jar, JarEntry e) throws Exception {
    InputStream in = jar.getInputStream(e);
    ByteArrayOutputStream out = new ByteArrayOutputStream();
    byte[] buf = new byte[4096];
    int n;
    while ((n = in.read(buf)) > 0) out.write(buf, 0, n);
    in.close();
    byte[] b = out.toByteArray();
    return ((b[6] & 0xff) << 8) | (b[7] & 0xff);
  }

  static String flag(boolean b) { return b ? "1" : "0"; }

  public static void main(String[] args) throws Exception {
    File file = new File(args[0]);
    JarFile jar = new JarFile(file);
    URLClassLoader loader = new URLClassLoader(new URL[] { file.toURI().toURL() }, ConstructLister.class.getClassLoader());
    List lines = new ArrayList();
    Enumeration en = jar.entries();
    while (en.hasMoreElements()) {
      JarEntry e = (JarEntry) en.nextElement();
      String name = e.getName();
      if (!name.endsWith(".class") || name.startsWith("META-INF/") || name.endsWith("module-info.class")) continue;
      String cn = name.substring(0, name.length() - 6).replace('/', '.');
      int major = majorOf(jar, e);
      Class c = Class.forName(cn, false, loader);
      String kind = c.isAnnotation() ? "ANNOTATION" : c.isEnum() ? "ENUM" : c.isInterface() ? "INTERFACE" : "CLASS";
      String simple = cn.substring(cn.lastIndexOf('.') + 1);
      lines.add(kind + " " + cn + " " + simple + " - " + mods(c.getModifiers()) + " "
          + flag(c.isAnnotationPresent(Deprecated.class)) + " " + flag(c.isSynthetic()) + " " + major);
      Method[] ms = c.getDeclaredMethods();
      for (int i = 0; i < ms.length; i++) {
        Method m = ms[i];
        lines.add("METHOD " + cn + " " + m.getName() + " " + params(m.getParameterTypes()) + descriptorOf(m.getReturnType())
            + " " + mods(m.getModifiers()) + " " + flag(m.isAnnotationPresent(Deprecated.class))
            + " " + flag(m.isSynthetic() || m.isBridge()) + " " + major);
      }
      Constructor[] cs = c.getDeclaredConstructors();
      for (int i = 0; i < cs.length; i++) {
        Constructor k = cs[i];
        lines.add("CONSTRUCTOR " + cn + " <init> " + params(k.getParameterTypes()) + "V"
            + " " + mods(k.getModifiers()) + " " + flag(k.isAnnotationPresent(Deprecated.class))
            + " " + flag(k.isSynthetic()) + " " + major);
      }
      Field[] fs = c.getDeclaredFields();
      for (int i = 0; i < fs.length; i++) {
        Field f = fs[i];
        lines.add("FIELD " + cn + " " + f.getName() + " " + descriptorOf(f.getType())
            + " " + mods(f.getModifiers()) + " " + flag(f.isAnnotationPresent(Deprecated.class))
            + " " + flag(f.isSynthetic()) + " " + major);
      }
    }
    Collections.sort(lines);
    for (int i = 0; i < lines.size(); i++) System.out.println(lines.get(i));
  }
}
